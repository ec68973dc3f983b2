#include "vpm/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace vpm {

FeasibilityProblem::FeasibilityProblem(std::vector<ConvexSetPtr> sets_in,
                                       std::vector<double> betas_in)
    : sets(std::move(sets_in)), betas(std::move(betas_in)) {
    if (sets.empty()) {
        throw std::invalid_argument("FeasibilityProblem: no sets");
    }
    if (sets.size() != betas.size()) {
        throw std::invalid_argument(
            "FeasibilityProblem: sets/betas length mismatch");
    }
    for (const auto& set : sets) {
        if (!set || set->dim() != sets.front()->dim()) {
            throw std::invalid_argument(
                "FeasibilityProblem: dimension mismatch");
        }
    }
    for (double beta : betas) {
        if (!(beta > 0.0)) {
            throw std::invalid_argument(
                "FeasibilityProblem: beta must be > 0");
        }
    }
}

double FeasibilityProblem::residual(const Point& x) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        worst = std::max(worst, sets[i]->distance(x) - betas[i]);
    }
    return std::max(0.0, worst);
}

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::Stalled: return "stalled";
        case SolveStatus::Unconverged: return "unconverged";
    }
    return "unknown";
}

std::string to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Valiant: return "valiant";
        case OperatorKind::BikIntrepid: return "bik_intrepid";
        case OperatorKind::GeometricIntrepid: return "geometric_intrepid";
        case OperatorKind::Relaxed: return "relaxed";
    }
    return "unknown";
}

namespace {

StepOperatorPtr make_step(const FeasibilityProblem& problem, std::size_t i,
                          OperatorKind kind, double tau) {
    const ConvexSetPtr& set = problem.sets[i];
    const double beta = problem.betas[i];
    switch (kind) {
        case OperatorKind::Valiant:
            return std::make_shared<ValiantOperator>(set, beta, tau);
        case OperatorKind::BikIntrepid:
            return std::make_shared<BikIntrepidOperator>(set, beta);
        case OperatorKind::GeometricIntrepid:
            return std::make_shared<GeometricIntrepidOperator>(set, beta);
        case OperatorKind::Relaxed:
            return std::make_shared<RelaxedProjector>(
                std::make_shared<Enlargement>(set, beta), tau);
    }
    throw std::logic_error("unknown operator kind");
}

void require_finite(const Point& x) {
    for (double c : x.coords()) {
        if (!std::isfinite(c)) {
            throw std::runtime_error("solver: iterate became non-finite");
        }
    }
}

}  // namespace

SolveResult cyclic_solve(const FeasibilityProblem& problem,
                         const SolverConfig& config, const Point& x0) {
    if (x0.dim() != problem.dim()) {
        throw std::invalid_argument("cyclic_solve: x0 dimension mismatch");
    }
    if (!(config.residual_tol > 0.0)) {
        throw std::invalid_argument("cyclic_solve: residual_tol must be > 0");
    }
    if (config.step_tol < 0.0) {
        throw std::invalid_argument("cyclic_solve: step_tol must be >= 0");
    }
    if (config.max_sweeps < 1) {
        throw std::invalid_argument("cyclic_solve: max_sweeps must be >= 1");
    }

    const std::size_t m = problem.size();
    Point x = x0;
    RunTrace trace;
    long k = 0;

    for (long sweep = 0; sweep < config.max_sweeps; ++sweep) {
        double sweep_max_step = 0.0;
        for (std::size_t j = 0; j < m; ++j, ++k) {
            const double tau = config.tau_schedule(k);
            if (!(tau >= config.tau_margin &&
                  tau <= 2.0 - config.tau_margin)) {
                throw std::invalid_argument(
                    "cyclic_solve: tau_k outside [margin, 2 - margin]");
            }
            const auto op = make_step(problem, j, config.operator_kind, tau);
            Point next = op->apply(x);
            require_finite(next);
            const double step = linalg::dist(next, x);
            sweep_max_step = std::max(sweep_max_step, step);
            x = std::move(next);

            if (config.record_trace) {
                TraceRecord rec;
                rec.k = k;
                rec.active_index = static_cast<int>(j) + 1;
                rec.step_norm = step;
                rec.residual = problem.residual(x);
                if (config.fejer_reference) {
                    rec.fejer_dist =
                        linalg::dist(x, *config.fejer_reference);
                }
                const bool snapshot =
                    config.snapshot_stride <= 0
                        ? (j + 1 == m)
                        : (k % config.snapshot_stride == 0);
                if (snapshot) rec.snapshot = x;
                trace.records.push_back(std::move(rec));
            }
        }

        trace.sweeps = sweep + 1;
        const double residual = problem.residual(x);
        trace.final_residual = residual;
        if (residual <= config.residual_tol) {
            trace.status = SolveStatus::Converged;
            return {std::move(x), std::move(trace)};
        }
        if (sweep_max_step <= config.step_tol) {
            trace.status = SolveStatus::Stalled;
            return {std::move(x), std::move(trace)};
        }
    }

    trace.status = SolveStatus::Unconverged;
    return {std::move(x), std::move(trace)};
}

SolveResult vpm_solve(const FeasibilityProblem& problem,
                      const SolverConfig& config, const Point& x0) {
    SolverConfig cfg = config;
    cfg.operator_kind = OperatorKind::Valiant;
    return cyclic_solve(problem, cfg, x0);
}

FeasibilityProblem arm_induced_problem(const std::vector<Hyperslab>& slabs) {
    if (slabs.empty()) {
        throw std::invalid_argument("arm_solve: no slabs");
    }
    std::vector<ConvexSetPtr> sets;
    std::vector<double> betas;
    sets.reserve(slabs.size());
    betas.reserve(slabs.size());
    for (const auto& slab : slabs) {
        if (slab.hi() == slab.lo()) {
            throw std::invalid_argument(
                "zero-width slab: ARM requires positive half-width");
        }
        sets.push_back(std::make_shared<Hyperplane>(slab.median_hyperplane()));
        betas.push_back(slab.half_width());
    }
    return FeasibilityProblem(std::move(sets), std::move(betas));
}

SolveResult arm_solve(const std::vector<Hyperslab>& slabs,
                      const SolverConfig& config, const Point& x0) {
    SolverConfig cfg = config;
    cfg.operator_kind = OperatorKind::Valiant;
    return cyclic_solve(arm_induced_problem(slabs), cfg, x0);
}

bool fejer_check(const RunTrace& trace, const Point& x0, const Point& z) {
    const Point* prev = &x0;
    for (const auto& rec : trace.records) {
        if (!rec.snapshot) {
            throw std::invalid_argument(
                "fejer_check: trace lacks per-iteration snapshots");
        }
        const Point& cur = *rec.snapshot;
        const double d_prev = linalg::dist(*prev, z);
        const double d_cur = linalg::dist(cur, z);
        if (d_cur > d_prev + 1e-10) return false;
        const double step2 = [&] {
            const double s = linalg::dist(cur, *prev);
            return s * s;
        }();
        if (d_cur * d_cur > d_prev * d_prev - step2 + 1e-8) return false;
        prev = &*rec.snapshot;
    }
    return true;
}

bool asymptotic_regularity_check(const RunTrace& trace, std::size_t window,
                                 double threshold) {
    if (window == 0 || trace.records.size() <= 2 * window) {
        throw std::invalid_argument(
            "asymptotic_regularity_check: trace too short for window");
    }
    double first_max = 0.0;
    double last_max = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
        first_max = std::max(first_max, trace.records[i].step_norm);
        last_max = std::max(
            last_max,
            trace.records[trace.records.size() - 1 - i].step_norm);
    }
    return last_max <= first_max && last_max < threshold;
}

}  // namespace vpm
