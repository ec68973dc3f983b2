#include <doctest.h>

#include <cmath>

#include "vpm/harness.hpp"

using namespace vpm;
using namespace vpm::harness;

TEST_CASE("scalar oracle") {
    // below the depth: constant
    const auto flat = scalar_oracle(0.5, 1.0, 1.0, 5);
    for (double d : flat) CHECK(d == 0.5);

    const auto seq = scalar_oracle(4.0, 1.0, 1.0, 3);
    CHECK(seq[0] == 4.0);
    CHECK(seq[1] == 2.125);

    // strictly decreasing, bounded below by beta, over a parameter grid
    for (double d0 : {1.2, 2.0, 8.0, 64.0}) {
        for (double beta : {0.25, 1.0, 1.75}) {
            for (double tau : {0.2, 1.0, 1.8}) {
                const auto run = scalar_oracle(d0 * beta, beta, tau, 200);
                for (std::size_t k = 1; k < run.size(); ++k) {
                    // within an ulp of beta the decrement can round away
                    if (run[k - 1] > beta * (1.0 + 1e-12)) {
                        CHECK(run[k] < run[k - 1]);
                    } else {
                        CHECK(run[k] <= run[k - 1]);
                    }
                    CHECK(run[k] > 0.0);
                    // overshoot below beta is possible only for tau > 1
                    if (tau <= 1.0) {
                        CHECK(run[k] > beta * (1.0 - 1e-12));
                    }
                }
            }
        }
    }

    CHECK_THROWS_AS(scalar_oracle(-1.0, 1.0, 1.0, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(scalar_oracle(1.0, 1.0, 2.0, 3),
                    std::invalid_argument);
}

TEST_CASE("property suites pass at smoke scale") {
    InstanceSampler sampler;
    CHECK(check_ne(OperatorKind::Valiant, sampler, 2000, 11).passed());
    CHECK(check_sqne(sampler, 2000, 12).passed());
    CHECK(check_fixed_point_set(sampler, 200, 13).passed());
    CHECK(check_relaxed(sampler, 2000, 14).passed());
    CHECK(check_reflection(sampler, 2000, 15).passed());
}

TEST_CASE("ne margin is exactly zero for identical points") {
    InstanceSampler sampler;
    auto rng = sampler.rng_for_trial(3, 0);
    const auto set = sampler.make_set(rng, SetFamily::Ball, 5);
    const ValiantOperator op(set, 1.0, 1.0);
    const Point x = sampler.random_point(rng, 5);
    CHECK(linalg::dist(op.apply(x), op.apply(x)) == 0.0);
}

TEST_CASE("reports are reproducible given the seed") {
    InstanceSampler sampler;
    const auto a = check_ne(OperatorKind::Valiant, sampler, 500, 77);
    const auto b = check_ne(OperatorKind::Valiant, sampler, 500, 77);
    CHECK(a.violations == b.violations);
    CHECK(a.worst_margin == b.worst_margin);
    const auto c = check_ne(OperatorKind::BikIntrepid, sampler, 500, 77);
    const auto d = check_ne(OperatorKind::BikIntrepid, sampler, 500, 77);
    CHECK(c.violations == d.violations);
    CHECK(c.worst_margin == d.worst_margin);
}

TEST_CASE("report formatting") {
    PropertyReport report;
    report.name = "demo";
    report.trials = 10;
    report.violations = 0;
    report.worst_margin = -0.5;
    report.seed = 9;
    CHECK(csv_header() == "property,trials,violations,worst_margin,seed");
    CHECK(to_csv_row(report) == "demo,10,0,-0.5,9");
    CHECK(to_text_line(report).rfind("PASS demo:", 0) == 0);
    report.violations = 3;
    CHECK(to_text_line(report).rfind("FAIL demo:", 0) == 0);
}

TEST_CASE("planted problems are feasible by construction") {
    InstanceSampler sampler;
    for (long trial = 0; trial < 50; ++trial) {
        auto rng = sampler.rng_for_trial(31, trial);
        std::uniform_int_distribution<std::size_t> pick_m(1, 10);
        std::uniform_int_distribution<std::size_t> pick_dim(2, 20);
        const auto planted =
            sampler.planted_problem(rng, pick_m(rng), pick_dim(rng));
        CHECK(planted.problem.residual(planted.feasible) <= 1e-10);
    }
}
