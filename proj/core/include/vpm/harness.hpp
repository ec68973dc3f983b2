#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vpm/operators.hpp"
#include "vpm/solver.hpp"

namespace vpm::harness {

struct PropertyReport {
    std::string name;
    long trials = 0;
    long violations = 0;
    double worst_margin = 0.0;  // max over trials of lhs - rhs; <= 0 is a pass
    std::uint64_t seed = 0;
    double elapsed_sec = 0.0;

    bool passed() const { return violations == 0; }
};

std::string csv_header();
std::string to_csv_row(const PropertyReport& report);
std::string to_text_line(const PropertyReport& report);

enum class SetFamily { Halfspace, Hyperplane, Hyperslab, Ball, Box };

std::string to_string(SetFamily family);

struct SamplerConfig {
    std::vector<std::size_t> dims = {2, 5, 20};
    std::vector<SetFamily> families = {SetFamily::Halfspace,
                                       SetFamily::Hyperplane,
                                       SetFamily::Hyperslab, SetFamily::Ball,
                                       SetFamily::Box};
    double beta_lo = 0.1;
    double beta_hi = 2.0;
    std::vector<double> taus = {0.2, 1.0, 1.8};
    double scale = 10.0;
};

struct PlantedProblem {
    FeasibilityProblem problem;
    Point feasible;  // a point of the intersection of the enlargements
};

/// Random instances for the property suites. Trials are reproducible: each
/// trial derives its own generator from (seed, trial index).
class InstanceSampler {
  public:
    explicit InstanceSampler(SamplerConfig config = {})
        : config_(std::move(config)) {}

    const SamplerConfig& config() const { return config_; }

    std::mt19937_64 rng_for_trial(std::uint64_t seed, long trial) const;

    std::size_t pick_dim(std::mt19937_64& rng) const;
    SetFamily pick_family(std::mt19937_64& rng) const;
    double pick_beta(std::mt19937_64& rng) const;
    double pick_tau(std::mt19937_64& rng) const;

    Point random_point(std::mt19937_64& rng, std::size_t dim) const;
    Point random_direction(std::mt19937_64& rng, std::size_t dim) const;

    ConvexSetPtr make_set(std::mt19937_64& rng, SetFamily family,
                          std::size_t dim) const;

    /// A point of the set (projection of a random point).
    Point member_point(std::mt19937_64& rng, const ConvexSet& set) const;

    /// A point at prescribed distance from the set, built by walking from a
    /// projection foot along the outward unit direction (exact for convex
    /// sets). target == 0 yields a member point.
    Point point_at_distance(std::mt19937_64& rng, const ConvexSet& set,
                            double target) const;

    /// Feasibility problem with a planted point contained in every base set,
    /// so the intersection of the enlargements is nonempty by construction.
    PlantedProblem planted_problem(std::mt19937_64& rng, std::size_t m,
                                   std::size_t dim) const;

  private:
    SamplerConfig config_;
};

/// Nonexpansivity of an operator family, sampled over pairs stratified
/// across branch combinations (inside/inside, outside/outside, mixed).
PropertyReport check_ne(OperatorKind kind, const InstanceSampler& sampler,
                        long trials, std::uint64_t seed);

/// 1-SQNE chain for the valiant operator, including the sharper
/// (2 - gamma)/gamma middle bound when the point is outside the enlargement.
PropertyReport check_sqne(const InstanceSampler& sampler, long trials,
                          std::uint64_t seed);

/// Fix V_{Z_[beta]} = Z_[beta]: exact identity at relative depths u <= 1,
/// strict movement at u >= 1.001.
PropertyReport check_fixed_point_set(const InstanceSampler& sampler,
                                     long trials, std::uint64_t seed);

/// Relaxed projector descent inequality.
PropertyReport check_relaxed(const InstanceSampler& sampler, long trials,
                             std::uint64_t seed);

/// Geometric intrepid middle branch: d_Z(G(x)) = 2 beta - d_Z(x).
PropertyReport check_reflection(const InstanceSampler& sampler, long trials,
                                std::uint64_t seed);

/// Distance dynamics of VPM on a single hyperplane with unit normal:
/// d_{k+1} = d_k (1 - (tau/2)(1 - (beta/d_k)^2)) while d_k > beta, else
/// constant. Returns d_0 .. d_steps. Independent oracle for solver traces.
std::vector<double> scalar_oracle(double d0, double beta, double tau,
                                  std::size_t steps);

}  // namespace vpm::harness
