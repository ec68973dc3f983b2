#include "vpm/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vpm::harness {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

std::string csv_header() {
    return "property,trials,violations,worst_margin,seed";
}

std::string to_csv_row(const PropertyReport& report) {
    std::ostringstream out;
    out << report.name << ',' << report.trials << ',' << report.violations
        << ',' << fmt_double(report.worst_margin) << ',' << report.seed;
    return out.str();
}

std::string to_text_line(const PropertyReport& report) {
    std::ostringstream out;
    out << (report.passed() ? "PASS " : "FAIL ") << report.name << ": trials="
        << report.trials << " violations=" << report.violations
        << " worst_margin=" << fmt_double(report.worst_margin)
        << " seed=" << report.seed << " elapsed="
        << fmt_double(report.elapsed_sec) << "s";
    return out.str();
}

std::string to_string(SetFamily family) {
    switch (family) {
        case SetFamily::Halfspace: return "halfspace";
        case SetFamily::Hyperplane: return "hyperplane";
        case SetFamily::Hyperslab: return "hyperslab";
        case SetFamily::Ball: return "ball";
        case SetFamily::Box: return "box";
    }
    return "unknown";
}

std::mt19937_64 InstanceSampler::rng_for_trial(std::uint64_t seed,
                                               long trial) const {
    // splitmix64 on (seed, trial) so trials are independent and replayable.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL *
                                 (static_cast<std::uint64_t>(trial) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return std::mt19937_64(z);
}

std::size_t InstanceSampler::pick_dim(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(
        0, config_.dims.size() - 1);
    return config_.dims[pick(rng)];
}

SetFamily InstanceSampler::pick_family(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(
        0, config_.families.size() - 1);
    return config_.families[pick(rng)];
}

double InstanceSampler::pick_beta(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> pick(config_.beta_lo,
                                                config_.beta_hi);
    return pick(rng);
}

double InstanceSampler::pick_tau(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0,
                                                    config_.taus.size() - 1);
    return config_.taus[pick(rng)];
}

Point InstanceSampler::random_point(std::mt19937_64& rng,
                                    std::size_t dim) const {
    std::uniform_real_distribution<double> coord(-config_.scale,
                                                 config_.scale);
    std::vector<double> coords(dim);
    for (auto& c : coords) c = coord(rng);
    return Point(std::move(coords));
}

Point InstanceSampler::random_direction(std::mt19937_64& rng,
                                        std::size_t dim) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        std::vector<double> coords(dim);
        for (auto& c : coords) c = gauss(rng);
        Point p(std::move(coords));
        const double n = linalg::norm(p);
        if (n > 1e-6) return linalg::scale(1.0 / n, p);
    }
}

ConvexSetPtr InstanceSampler::make_set(std::mt19937_64& rng, SetFamily family,
                                       std::size_t dim) const {
    std::uniform_real_distribution<double> offset(-config_.scale,
                                                  config_.scale);
    std::uniform_real_distribution<double> width(0.1, config_.scale);
    switch (family) {
        case SetFamily::Halfspace:
            return std::make_shared<Halfspace>(random_direction(rng, dim),
                                               offset(rng));
        case SetFamily::Hyperplane:
            return std::make_shared<Hyperplane>(random_direction(rng, dim),
                                                offset(rng));
        case SetFamily::Hyperslab: {
            const double mid = offset(rng);
            const double half = 0.5 * width(rng);
            return std::make_shared<Hyperslab>(random_direction(rng, dim),
                                               mid - half, mid + half);
        }
        case SetFamily::Ball:
            return std::make_shared<Ball>(random_point(rng, dim), width(rng));
        case SetFamily::Box: {
            const Point center = random_point(rng, dim);
            std::vector<double> lo(dim), hi(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                const double half = 0.5 * width(rng);
                lo[i] = center[i] - half;
                hi[i] = center[i] + half;
            }
            return std::make_shared<Box>(Point(std::move(lo)),
                                         Point(std::move(hi)));
        }
    }
    throw std::logic_error("unknown set family");
}

Point InstanceSampler::member_point(std::mt19937_64& rng,
                                    const ConvexSet& set) const {
    return set.project(random_point(rng, set.dim()));
}

Point InstanceSampler::point_at_distance(std::mt19937_64& rng,
                                         const ConvexSet& set,
                                         double target) const {
    if (target < 0.0) {
        throw std::invalid_argument("point_at_distance: negative target");
    }
    if (target == 0.0) return member_point(rng, set);
    // Find an exterior point; its projection foot and outward unit direction
    // give exact control of the distance along the ray.
    double reach = 3.0 * config_.scale;
    for (int attempt = 0; attempt < 64; ++attempt, reach *= 2.0) {
        const Point probe = linalg::scale(reach, random_direction(
                                                     rng, set.dim()));
        const Point foot = set.project(probe);
        const double d = linalg::dist(probe, foot);
        if (d < 1e-9) continue;
        const Point direction =
            linalg::scale(1.0 / d, linalg::sub(probe, foot));
        return linalg::axpy(target, direction, foot);
    }
    throw std::runtime_error(
        "point_at_distance: could not find an exterior direction");
}

PlantedProblem InstanceSampler::planted_problem(std::mt19937_64& rng,
                                                std::size_t m,
                                                std::size_t dim) const {
    const Point z = random_point(rng, dim);
    std::uniform_real_distribution<double> offset(0.5, config_.scale);
    std::uniform_real_distribution<double> width(0.1, config_.scale);
    std::vector<ConvexSetPtr> sets;
    std::vector<double> betas;
    for (std::size_t i = 0; i < m; ++i) {
        const SetFamily family = pick_family(rng);
        // Each base set is built to contain z, so z lies in every
        // enlargement regardless of beta.
        switch (family) {
            case SetFamily::Halfspace: {
                const Point a = random_direction(rng, dim);
                sets.push_back(std::make_shared<Halfspace>(
                    a, linalg::inner(a, z) + offset(rng)));
                break;
            }
            case SetFamily::Hyperplane: {
                const Point a = random_direction(rng, dim);
                sets.push_back(
                    std::make_shared<Hyperplane>(a, linalg::inner(a, z)));
                break;
            }
            case SetFamily::Hyperslab: {
                const Point a = random_direction(rng, dim);
                const double t = linalg::inner(a, z);
                sets.push_back(std::make_shared<Hyperslab>(
                    a, t - width(rng), t + width(rng)));
                break;
            }
            case SetFamily::Ball: {
                const double r = width(rng);
                Point c = linalg::axpy(0.5 * r, random_direction(rng, dim),
                                       z);
                sets.push_back(std::make_shared<Ball>(std::move(c), r));
                break;
            }
            case SetFamily::Box: {
                std::vector<double> lo(dim), hi(dim);
                for (std::size_t j = 0; j < dim; ++j) {
                    lo[j] = z[j] - width(rng);
                    hi[j] = z[j] + width(rng);
                }
                sets.push_back(std::make_shared<Box>(Point(std::move(lo)),
                                                     Point(std::move(hi))));
                break;
            }
        }
        betas.push_back(pick_beta(rng));
    }
    return {FeasibilityProblem(std::move(sets), std::move(betas)), z};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Relative depth strata covering the branch case split: inside the
/// enlargement, in the (beta, 2 beta) band, and far outside.
double stratum_depth(std::mt19937_64& rng, int stratum, double beta) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (stratum) {
        case 0: return beta * unit(rng);                    // inside
        case 1: return beta * (1.0 + unit(rng));            // band
        default: return beta * (2.0 + 8.0 * unit(rng));     // far
    }
}

StepOperatorPtr make_family_op(OperatorKind kind, ConvexSetPtr set,
                               double beta, double tau) {
    switch (kind) {
        case OperatorKind::Valiant:
            return std::make_shared<ValiantOperator>(std::move(set), beta,
                                                     tau);
        case OperatorKind::BikIntrepid:
            return std::make_shared<BikIntrepidOperator>(std::move(set),
                                                         beta);
        case OperatorKind::GeometricIntrepid:
            return std::make_shared<GeometricIntrepidOperator>(
                std::move(set), beta);
        case OperatorKind::Relaxed:
            return std::make_shared<RelaxedProjector>(
                std::make_shared<Enlargement>(std::move(set), beta), tau);
    }
    throw std::logic_error("unknown operator kind");
}

}  // namespace

PropertyReport check_ne(OperatorKind kind, const InstanceSampler& sampler,
                        long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("check_ne: trials < 1");
    const auto start = Clock::now();
    PropertyReport report;
    report.name = "ne_" + vpm::to_string(kind);
    report.trials = trials;
    report.seed = seed;
    report.worst_margin = -std::numeric_limits<double>::infinity();
    for (long t = 0; t < trials; ++t) {
        auto rng = sampler.rng_for_trial(seed, t);
        const std::size_t dim = sampler.pick_dim(rng);
        const SetFamily family = sampler.pick_family(rng);
        const auto set = sampler.make_set(rng, family, dim);
        const double beta = sampler.pick_beta(rng);
        const double tau = sampler.pick_tau(rng);
        const auto op = make_family_op(kind, set, beta, tau);
        // Stratify both points across the branch cases (possibilities
        // A/B/C: both inside, both outside, mixed).
        std::uniform_int_distribution<int> pick_stratum(0, 2);
        const Point x = sampler.point_at_distance(
            rng, *set, stratum_depth(rng, pick_stratum(rng), beta));
        const Point y = sampler.point_at_distance(
            rng, *set, stratum_depth(rng, pick_stratum(rng), beta));
        const double margin = linalg::dist(op->apply(x), op->apply(y)) -
                              linalg::dist(x, y);
        report.worst_margin = std::max(report.worst_margin, margin);
        if (margin > 1e-10) ++report.violations;
    }
    report.elapsed_sec = seconds_since(start);
    return report;
}

PropertyReport check_sqne(const InstanceSampler& sampler, long trials,
                          std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("check_sqne: trials < 1");
    const auto start = Clock::now();
    PropertyReport report;
    report.name = "sqne_valiant";
    report.trials = trials;
    report.seed = seed;
    report.worst_margin = -std::numeric_limits<double>::infinity();
    for (long t = 0; t < trials; ++t) {
        auto rng = sampler.rng_for_trial(seed, t);
        const std::size_t dim = sampler.pick_dim(rng);
        const auto set = sampler.make_set(rng, sampler.pick_family(rng), dim);
        const double beta = sampler.pick_beta(rng);
        const double tau = sampler.pick_tau(rng);
        ValiantOperator op(set, beta, tau);
        std::uniform_int_distribution<int> pick_stratum(0, 2);
        const double d = stratum_depth(rng, pick_stratum(rng), beta);
        const Point x = sampler.point_at_distance(rng, *set, d);
        const Point c = sampler.member_point(rng, *set);
        const Point vx = op.apply(x);
        const double xc2 = [&] {
            const Point delta = linalg::sub(x, c);
            return linalg::inner(delta, delta);
        }();
        const double vc2 = [&] {
            const Point delta = linalg::sub(vx, c);
            return linalg::inner(delta, delta);
        }();
        const double lhs = xc2 - vc2;
        const double step2 = [&] {
            const Point delta = linalg::sub(x, vx);
            return linalg::inner(delta, delta);
        }();
        double margin = step2 - lhs;
        if (set->distance(x) > beta) {
            const double g = op.gamma(x);
            margin = std::max(margin, (2.0 - g) / g * step2 - lhs);
        }
        // the inequality compares differences of squared norms, so the
        // tolerance must scale with their magnitude
        margin /= std::max(1.0, std::max(xc2, vc2));
        report.worst_margin = std::max(report.worst_margin, margin);
        if (margin > 1e-9) ++report.violations;
    }
    report.elapsed_sec = seconds_since(start);
    return report;
}

PropertyReport check_fixed_point_set(const InstanceSampler& sampler,
                                     long trials, std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("check_fixed_point_set: trials < 1");
    }
    static constexpr double kDepths[] = {0.0, 0.5, 0.999, 1.0,
                                         1.001, 1.5, 10.0};
    const auto start = Clock::now();
    PropertyReport report;
    report.name = "fix_valiant";
    report.trials = trials;
    report.seed = seed;
    report.worst_margin = -std::numeric_limits<double>::infinity();
    for (long t = 0; t < trials; ++t) {
        auto rng = sampler.rng_for_trial(seed, t);
        const std::size_t dim = sampler.pick_dim(rng);
        const auto set = sampler.make_set(rng, sampler.pick_family(rng), dim);
        const double beta = sampler.pick_beta(rng);
        ValiantOperator op(set, beta, sampler.pick_tau(rng));
        for (double u : kDepths) {
            Point x = sampler.point_at_distance(rng, *set, beta * u);
            // Construction rounding may overshoot the boundary by an ulp;
            // pull the u <= 1 samples back inside the enlargement.
            for (int i = 0; u <= 1.0 && i < 32 && set->distance(x) > beta;
                 ++i) {
                const Point p = set->project(x);
                x = linalg::axpy(1.0 - 1e-12, linalg::sub(x, p), p);
            }
            const Point vx = op.apply(x);
            const double step = linalg::dist(vx, x);
            if (u <= 1.0) {
                // Identity branch must be exact.
                if (!(vx == x)) ++report.violations;
                report.worst_margin = std::max(report.worst_margin, step);
            } else {
                if (!(step > 0.0)) ++report.violations;
                report.worst_margin =
                    std::max(report.worst_margin, -step);
            }
        }
    }
    report.elapsed_sec = seconds_since(start);
    return report;
}

PropertyReport check_relaxed(const InstanceSampler& sampler, long trials,
                             std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("check_relaxed: trials < 1");
    const auto start = Clock::now();
    PropertyReport report;
    report.name = "relaxed_descent";
    report.trials = trials;
    report.seed = seed;
    report.worst_margin = -std::numeric_limits<double>::infinity();
    for (long t = 0; t < trials; ++t) {
        auto rng = sampler.rng_for_trial(seed, t);
        const std::size_t dim = sampler.pick_dim(rng);
        const auto set = sampler.make_set(rng, sampler.pick_family(rng), dim);
        std::uniform_real_distribution<double> pick_lambda(0.05, 1.95);
        const double lambda = pick_lambda(rng);
        RelaxedProjector op(set, lambda);
        const Point x = sampler.random_point(rng, dim);
        const Point c = sampler.member_point(rng, *set);
        const Point rx = op.apply(x);
        const double lhs = [&] {
            const Point a = linalg::sub(x, c);
            const Point b = linalg::sub(rx, c);
            return linalg::inner(a, a) - linalg::inner(b, b);
        }();
        const double step2 = [&] {
            const Point delta = linalg::sub(x, rx);
            return linalg::inner(delta, delta);
        }();
        const double margin = (2.0 - lambda) / lambda * step2 - lhs;
        report.worst_margin = std::max(report.worst_margin, margin);
        if (margin > 1e-9) ++report.violations;
    }
    report.elapsed_sec = seconds_since(start);
    return report;
}

PropertyReport check_reflection(const InstanceSampler& sampler, long trials,
                                std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("check_reflection: trials < 1");
    }
    const auto start = Clock::now();
    PropertyReport report;
    report.name = "geometric_reflection";
    report.trials = trials;
    report.seed = seed;
    report.worst_margin = -std::numeric_limits<double>::infinity();
    for (long t = 0; t < trials; ++t) {
        auto rng = sampler.rng_for_trial(seed, t);
        const std::size_t dim = sampler.pick_dim(rng);
        const auto set = sampler.make_set(rng, sampler.pick_family(rng), dim);
        const double beta = sampler.pick_beta(rng);
        GeometricIntrepidOperator op(set, beta);
        // Middle-branch point: strictly between beta and 2 beta.
        std::uniform_real_distribution<double> band(1.001, 1.999);
        const double d = beta * band(rng);
        const Point x = sampler.point_at_distance(rng, *set, d);
        const double dx = set->distance(x);
        const double margin =
            std::abs(set->distance(op.apply(x)) - (2.0 * beta - dx));
        report.worst_margin = std::max(report.worst_margin, margin);
        if (margin > 1e-10) ++report.violations;
    }
    report.elapsed_sec = seconds_since(start);
    return report;
}

std::vector<double> scalar_oracle(double d0, double beta, double tau,
                                  std::size_t steps) {
    if (!(d0 > 0.0)) throw std::invalid_argument("scalar_oracle: d0 <= 0");
    if (!(beta > 0.0)) throw std::invalid_argument("scalar_oracle: beta <= 0");
    if (!(tau > 0.0 && tau < 2.0)) {
        throw std::invalid_argument("scalar_oracle: tau outside (0,2)");
    }
    std::vector<double> out;
    out.reserve(steps + 1);
    out.push_back(d0);
    double d = d0;
    for (std::size_t k = 0; k < steps; ++k) {
        if (d > beta) {
            const double r = beta / d;
            d = d * (1.0 - 0.5 * tau * (1.0 - r * r));
        }
        out.push_back(d);
    }
    return out;
}

}  // namespace vpm::harness
