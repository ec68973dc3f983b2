#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vpm/operators.hpp"
#include "vpm/sets.hpp"

namespace vpm {

/// Find a point in the intersection of the enlargements (Z_i)_[beta_i].
/// Nonemptiness of the intersection is assumed, not verified; infeasible
/// inputs surface as an unconverged run.
struct FeasibilityProblem {
    std::vector<ConvexSetPtr> sets;
    std::vector<double> betas;

    FeasibilityProblem(std::vector<ConvexSetPtr> sets_in,
                       std::vector<double> betas_in);

    std::size_t dim() const { return sets.front()->dim(); }
    std::size_t size() const { return sets.size(); }

    /// max_i max(0, d_{Z_i}(x) - beta_i): how far x is from the worst C_i.
    double residual(const Point& x) const;
};

enum class OperatorKind { Valiant, BikIntrepid, GeometricIntrepid, Relaxed };

enum class SolveStatus { Converged, Stalled, Unconverged };

std::string to_string(SolveStatus status);
std::string to_string(OperatorKind kind);

struct SolverConfig {
    /// Relaxation schedule k -> tau_k in the (0,2) convention; the step
    /// factor applied is tau_k/2. For the relaxed operator kind this value
    /// is used directly as lambda.
    std::function<double(long)> tau_schedule = [](long) { return 1.0; };
    double tau_margin = 1e-3;
    long max_sweeps = 10000;
    double residual_tol = 1e-8;
    double step_tol = 0.0;
    OperatorKind operator_kind = OperatorKind::Valiant;
    bool record_trace = true;
    /// Iterate snapshot stride: 0 keeps one snapshot per sweep, n >= 1 keeps
    /// one every n iterations.
    long snapshot_stride = 0;
    std::optional<Point> fejer_reference;
};

struct TraceRecord {
    long k = 0;
    int active_index = 0;  // 1-based i_k
    double step_norm = 0.0;
    double residual = 0.0;
    std::optional<double> fejer_dist;
    std::optional<Point> snapshot;
};

struct RunTrace {
    std::vector<TraceRecord> records;
    SolveStatus status = SolveStatus::Unconverged;
    long sweeps = 0;
    double final_residual = 0.0;
};

struct SolveResult {
    Point x;
    RunTrace trace;
};

/// The cyclic Valiant Projection Method: x^{k+1} = V_{C_{i_k}}(x^k) with
/// i_k = (k mod m) + 1, stopping when the per-sweep max residual drops to
/// residual_tol (or on step stagnation / sweep exhaustion).
SolveResult vpm_solve(const FeasibilityProblem& problem,
                      const SolverConfig& config, const Point& x0);

/// Same cyclic driver with the operator family chosen by
/// config.operator_kind (BIK / geometric intrepid, or relaxed projection
/// onto the enlargements themselves).
SolveResult cyclic_solve(const FeasibilityProblem& problem,
                         const SolverConfig& config, const Point& x0);

/// ARM on hyperslabs: VPM on the induced problem with Z_i the median
/// hyperplane of slab i and beta_i its geometric half-width. Zero-width
/// slabs are rejected (beta_i > 0 is required).
SolveResult arm_solve(const std::vector<Hyperslab>& slabs,
                      const SolverConfig& config, const Point& x0);

/// Induced (median hyperplane, half-width) problem of a slab system.
FeasibilityProblem arm_induced_problem(const std::vector<Hyperslab>& slabs);

/// Fejér monotonicity of the trace with respect to z, including the
/// per-step descent ||x^{k+1}-z||^2 <= ||x^k-z||^2 - ||x^{k+1}-x^k||^2.
/// Requires a snapshot on every record (snapshot_stride == 1).
bool fejer_check(const RunTrace& trace, const Point& x0, const Point& z);

/// Step norms vanish: max step over the final window does not exceed the
/// max over the first window and falls below the threshold.
bool asymptotic_regularity_check(const RunTrace& trace, std::size_t window,
                                 double threshold = 1e-6);

}  // namespace vpm
