#include <doctest.h>

#include <cmath>
#include <memory>

#include "vpm/harness.hpp"
#include "vpm/solver.hpp"

using namespace vpm;
using namespace vpm::linalg;

namespace {

FeasibilityProblem two_slab_problem() {
    // unit slabs [0,1] x [0,1] written as enlargements of their median
    // hyperplanes with beta = 0.5
    return FeasibilityProblem(
        {std::make_shared<Hyperplane>(Point{1, 0}, 0.5),
         std::make_shared<Hyperplane>(Point{0, 1}, 0.5)},
        {0.5, 0.5});
}

SolverConfig traced_config() {
    SolverConfig cfg;
    cfg.snapshot_stride = 1;
    return cfg;
}

}  // namespace

TEST_CASE("cyclic control order") {
    FeasibilityProblem problem(
        {std::make_shared<Hyperplane>(Point{1, 0, 0}, 0.0),
         std::make_shared<Hyperplane>(Point{0, 1, 0}, 0.0),
         std::make_shared<Hyperplane>(Point{0, 0, 1}, 0.0)},
        {1.0, 1.0, 1.0});
    SolverConfig cfg = traced_config();
    cfg.max_sweeps = 2;
    cfg.residual_tol = 1e-30;
    const auto result = vpm_solve(problem, cfg, Point{9, 9, 9});
    REQUIRE(result.trace.records.size() == 6);
    const int expected[] = {1, 2, 3, 1, 2, 3};
    for (int i = 0; i < 6; ++i) {
        CHECK(result.trace.records[i].active_index == expected[i]);
        CHECK(result.trace.records[i].k == i);
    }
}

TEST_CASE("feasible start returns bitwise after one sweep") {
    const auto problem = two_slab_problem();
    const Point x0{0.25, 0.75};
    const auto result = vpm_solve(problem, traced_config(), x0);
    CHECK(result.x == x0);
    CHECK(result.trace.sweeps == 1);
    CHECK(result.trace.status == SolveStatus::Converged);
    for (const auto& rec : result.trace.records) {
        CHECK(rec.step_norm == 0.0);
        CHECK(rec.residual == 0.0);
    }
}

TEST_CASE("single hyperplane run matches the scalar oracle") {
    FeasibilityProblem problem(
        {std::make_shared<Hyperplane>(Point{1, 0}, 0.0)}, {1.0});
    SolverConfig cfg = traced_config();
    cfg.residual_tol = 1e-9;
    const auto result = vpm_solve(problem, cfg, Point{4, 0});
    CHECK(result.trace.status == SolveStatus::Converged);

    const auto oracle =
        harness::scalar_oracle(4.0, 1.0, 1.0, result.trace.records.size());
    CHECK(std::abs(oracle[1] - 2.125) <= 1e-15);
    double prev = 4.0;
    for (std::size_t k = 0; k < result.trace.records.size(); ++k) {
        const Point& snap = *result.trace.records[k].snapshot;
        CHECK(std::abs(snap[0] - oracle[k + 1]) <= 1e-12);
        CHECK(snap[0] < prev);
        CHECK(snap[0] > 1.0 - 1e-12);
        prev = snap[0];
    }
    CHECK(result.trace.final_residual <= 1e-9);
}

TEST_CASE("two-slab problem converges into the inflated box") {
    const auto problem = two_slab_problem();
    SolverConfig cfg = traced_config();
    cfg.residual_tol = 1e-8;
    const auto result = vpm_solve(problem, cfg, Point{3, 3});
    CHECK(result.trace.status == SolveStatus::Converged);
    CHECK(result.trace.final_residual < 1e-6);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(result.x[i] >= -1e-6);
        CHECK(result.x[i] <= 1.0 + 1e-6);
    }
    // coordinates decouple: each follows the scalar recursion on the
    // median distance
    const auto oracle = harness::scalar_oracle(2.5, 0.5, 1.0, 50);
    const Point& first = *result.trace.records[0].snapshot;
    CHECK(std::abs((first[0] - 0.5) - oracle[1]) <= 1e-12);
}

TEST_CASE("non-valiant drivers") {
    FeasibilityProblem problem(
        {std::make_shared<Hyperplane>(Point{1, 0}, 0.0)}, {1.0});

    SolverConfig cfg = traced_config();
    cfg.operator_kind = OperatorKind::BikIntrepid;
    auto result = cyclic_solve(problem, cfg, Point{5, 0});
    // far branch lands exactly on the hyperplane, then stays
    CHECK((*result.trace.records[0].snapshot)[0] == 0.0);
    CHECK(result.trace.status == SolveStatus::Converged);
    CHECK(result.x[0] == 0.0);

    cfg.operator_kind = OperatorKind::GeometricIntrepid;
    result = cyclic_solve(problem, cfg, Point{1.5, 0});
    CHECK(std::abs((*result.trace.records[0].snapshot)[0] - 0.5) <= 1e-15);
    CHECK(result.trace.status == SolveStatus::Converged);

    cfg.operator_kind = OperatorKind::Relaxed;
    cfg.tau_schedule = [](long) { return 1.0; };  // classical projections
    const Point feasible{0.5, 3};
    result = cyclic_solve(problem, cfg, feasible);
    CHECK(result.x == feasible);
    CHECK(result.trace.sweeps == 1);
}

TEST_CASE("arm induced problem extraction") {
    const Hyperslab unit(Point{1, 0}, -1.0, 1.0);
    const auto induced = arm_induced_problem({unit});
    const auto* plane =
        dynamic_cast<const Hyperplane*>(induced.sets[0].get());
    REQUIRE(plane != nullptr);
    CHECK(plane->offset() == 0.0);
    CHECK(induced.betas[0] == 1.0);

    // non-unit normal: beta is the geometric half-width
    const Hyperslab wide(Point{2, 0}, -2.0, 2.0);
    CHECK(arm_induced_problem({wide}).betas[0] == 1.0);

    CHECK_THROWS_WITH_AS(
        arm_induced_problem({Hyperslab(Point{1, 0}, 0.5, 0.5)}),
        "zero-width slab: ARM requires positive half-width",
        std::invalid_argument);
}

TEST_CASE("arm iterates match vpm on the induced problem") {
    harness::InstanceSampler sampler;
    auto rng = sampler.rng_for_trial(2024, 0);
    std::vector<Hyperslab> slabs;
    for (int i = 0; i < 3; ++i) {
        const Point a = sampler.random_direction(rng, 5);
        const double mid = std::uniform_real_distribution<double>(-3, 3)(rng);
        const double half = std::uniform_real_distribution<double>(0.2, 2)(rng);
        slabs.emplace_back(a, mid - half, mid + half);
    }
    const Point x0 = sampler.random_point(rng, 5);
    SolverConfig cfg = traced_config();
    cfg.max_sweeps = 500;

    const auto via_arm = arm_solve(slabs, cfg, x0);
    const auto via_vpm = vpm_solve(arm_induced_problem(slabs), cfg, x0);
    REQUIRE(via_arm.trace.records.size() == via_vpm.trace.records.size());
    for (std::size_t k = 0; k < via_arm.trace.records.size(); ++k) {
        const Point& a = *via_arm.trace.records[k].snapshot;
        const Point& b = *via_vpm.trace.records[k].snapshot;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            CHECK(std::abs(a[i] - b[i]) <= 1e-12);
        }
    }
}

TEST_CASE("fejer_check") {
    const auto problem = two_slab_problem();
    const Point z{0.5, 0.5};

    SolverConfig cfg = traced_config();
    auto result = vpm_solve(problem, cfg, Point{0.2, 0.9});
    CHECK(fejer_check(result.trace, Point{0.2, 0.9}, z));  // constant trace

    result = vpm_solve(problem, cfg, Point{7, -4});
    CHECK(fejer_check(result.trace, Point{7, -4}, z));
    CHECK(fejer_check(result.trace, Point{7, -4}, Point{1, 0}));

    // snapshots are required
    cfg.snapshot_stride = 0;
    result = vpm_solve(problem, cfg, Point{7, -4});
    CHECK_THROWS_AS(fejer_check(result.trace, Point{7, -4}, z),
                    std::invalid_argument);
}

TEST_CASE("fejer_check rejects an over-relaxed trajectory") {
    // x_{k+1} = x_k + 2.5 (P(x_k) - x_k) on the hyperplane x1 = 0: an
    // invalid relaxation (lambda = 2.5 > 2) built by hand, diverging from
    // every feasible point
    const Hyperplane wall(Point{1, 0}, 0.0);
    RunTrace trace;
    Point x{1, 0};
    for (int k = 0; k < 6; ++k) {
        const Point next = linalg::axpy(2.5, sub(wall.project(x), x), x);
        TraceRecord rec;
        rec.k = k;
        rec.active_index = 1;
        rec.step_norm = dist(next, x);
        rec.snapshot = next;
        trace.records.push_back(rec);
        x = next;
    }
    CHECK_FALSE(fejer_check(trace, Point{1, 0}, Point{0, 0}));
}

TEST_CASE("asymptotic regularity check") {
    const auto problem = two_slab_problem();
    SolverConfig cfg = traced_config();

    // feasible start: all steps zero
    FeasibilityProblem five(
        {std::make_shared<Hyperplane>(Point{1, 0}, 0.5),
         std::make_shared<Hyperplane>(Point{0, 1}, 0.5),
         std::make_shared<Hyperplane>(Point{1, 1}, 1.0),
         std::make_shared<Hyperplane>(Point{1, -1}, 0.0),
         std::make_shared<Hyperplane>(Point{2, 1}, 1.5)},
        {0.5, 0.5, 0.8, 0.8, 1.0});
    auto result = vpm_solve(five, cfg, Point{0.5, 0.5});
    CHECK(asymptotic_regularity_check(result.trace, 2));

    // convergent run: step norms decay
    result = vpm_solve(problem, cfg, Point{30, -20});
    CHECK(asymptotic_regularity_check(result.trace, 3, 1e-3));

    // truncated run may legitimately fail the threshold, but is not an error
    cfg.max_sweeps = 2;
    result = vpm_solve(problem, cfg, Point{1e6, 1e6});
    CHECK_NOTHROW(asymptotic_regularity_check(result.trace, 1));

    // too-short trace is an error
    CHECK_THROWS_AS(asymptotic_regularity_check(result.trace, 2),
                    std::invalid_argument);
}

TEST_CASE("solver input validation") {
    const auto problem = two_slab_problem();
    SolverConfig cfg;
    CHECK_THROWS_AS(vpm_solve(problem, cfg, Point{1, 2, 3}),
                    std::invalid_argument);
    cfg.residual_tol = 0.0;
    CHECK_THROWS_AS(vpm_solve(problem, cfg, Point{1, 2}),
                    std::invalid_argument);
    cfg = SolverConfig{};
    cfg.tau_schedule = [](long) { return 1.9999; };  // inside margin band
    CHECK_THROWS_AS(vpm_solve(problem, cfg, Point{9, 9}),
                    std::invalid_argument);
}

TEST_CASE("unconverged status on an infeasible-looking budget") {
    FeasibilityProblem problem(
        {std::make_shared<Hyperplane>(Point{1, 0}, 0.0)}, {1.0});
    SolverConfig cfg = traced_config();
    cfg.max_sweeps = 1;
    const auto result = vpm_solve(problem, cfg, Point{1000, 0});
    CHECK(result.trace.status == SolveStatus::Unconverged);
    CHECK(result.trace.records.size() == 1);
}
