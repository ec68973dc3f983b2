#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "vpm/harness.hpp"
#include "vpm/sets.hpp"

using namespace vpm;
using namespace vpm::linalg;

namespace {

void check_point(const Point& actual, const Point& expected,
                 double tol = 1e-12) {
    REQUIRE(actual.dim() == expected.dim());
    for (std::size_t i = 0; i < actual.dim(); ++i) {
        CHECK(std::abs(actual[i] - expected[i]) <= tol);
    }
}

}  // namespace

TEST_CASE("halfspace projection") {
    const Halfspace h1(Point{1, 0}, 0.0);
    CHECK(h1.project(Point{-1, 5}) == Point{-1, 5});
    check_point(h1.project(Point{2, 3}), Point{0, 3});
    const Halfspace h2(Point{1, 1}, 0.0);
    check_point(h2.project(Point{1, 1}), Point{0, 0});
}

TEST_CASE("hyperslab projection") {
    const Hyperslab s(Point{1, 0}, -1.0, 1.0);
    CHECK(s.project(Point{0.5, 7}) == Point{0.5, 7});
    check_point(s.project(Point{3, 0}), Point{1, 0});
    check_point(s.project(Point{-4, 2}), Point{-1, 2});
    CHECK_THROWS_AS(Hyperslab(Point{1, 0}, 1.0, -1.0),
                    std::invalid_argument);
    // degenerate slab equals a hyperplane
    const Hyperslab degenerate(Point{1, 0}, 0.5, 0.5);
    const Hyperplane plane(Point{1, 0}, 0.5);
    check_point(degenerate.project(Point{3, 1}), plane.project(Point{3, 1}));
}

TEST_CASE("ball, box, hyperplane projections") {
    check_point(Ball(Point{0, 0}, 1.0).project(Point{3, 0}), Point{1, 0});
    check_point(Box(Point{0, 0}, Point{1, 1}).project(Point{-2, 0.5}),
                Point{0, 0.5});
    CHECK(Hyperplane(Point{1, 0}, 0.0).project(Point{0, 9}) == Point{0, 9});
    CHECK_THROWS_AS(Ball(Point{0, 0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Box(Point{1, 0}, Point{0, 1}), std::invalid_argument);
}

TEST_CASE("enlargement projection") {
    const auto ball = std::make_shared<Ball>(Point{0, 0}, 1.0);
    const Enlargement e(ball, 0.5);
    CHECK(e.project(Point{0.7, 0}) == Point{0.7, 0});
    check_point(e.project(Point{3, 0}), Point{1.5, 0});
    const auto plane = std::make_shared<Hyperplane>(Point{1, 0}, 0.0);
    check_point(Enlargement(plane, 1.0).project(Point{4, 2}), Point{1, 2});
    CHECK_THROWS_AS(Enlargement(ball, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Enlargement(ball, -1.0), std::invalid_argument);
}

TEST_CASE("projection oracle invariants over random sets") {
    harness::InstanceSampler sampler;
    const std::uint64_t seed = 20240811;
    for (long trial = 0; trial < 300; ++trial) {
        auto rng = sampler.rng_for_trial(seed, trial);
        const std::size_t dim = sampler.pick_dim(rng);
        const auto set =
            sampler.make_set(rng, sampler.pick_family(rng), dim);
        const Point x = sampler.random_point(rng, dim);
        const Point px = set->project(x);

        // distance agrees with the projection
        CHECK(std::abs(set->distance(x) - dist(x, px)) <= 1e-10);
        // idempotence
        CHECK(dist(set->project(px), px) <= 1e-10);
        CHECK(set->contains(px, 1e-9));

        for (int s = 0; s < 20; ++s) {
            const Point member = sampler.member_point(rng, *set);
            // projection minimality
            CHECK(dist(x, px) <= dist(x, member) + 1e-10);
            // variational characterization <x - px, s - px> <= 0
            CHECK(inner(sub(x, px), sub(member, px)) <= 1e-10);
        }

        // projector firm nonexpansivity
        const Point y = sampler.random_point(rng, dim);
        const Point py = set->project(y);
        const double lhs = [&] {
            const Point dp = sub(px, py);
            const Point dr = sub(sub(x, px), sub(y, py));
            return inner(dp, dp) + inner(dr, dr);
        }();
        const double rhs = [&] {
            const Point d = sub(x, y);
            return inner(d, d);
        }();
        CHECK(lhs <= rhs + 1e-10);
    }
}

TEST_CASE("enlargement distance consistency") {
    harness::InstanceSampler sampler;
    const std::uint64_t seed = 7;
    for (long trial = 0; trial < 300; ++trial) {
        auto rng = sampler.rng_for_trial(seed, trial);
        const std::size_t dim = sampler.pick_dim(rng);
        const auto set =
            sampler.make_set(rng, sampler.pick_family(rng), dim);
        const double beta = sampler.pick_beta(rng);
        const Enlargement e(set, beta);
        const Point x = sampler.random_point(rng, dim);
        const double expected = std::max(0.0, set->distance(x) - beta);
        CHECK(std::abs(e.distance(x) - expected) <= 1e-10);
        CHECK(dist(x, e.project(x)) <= expected + 1e-10);
        // Z is contained in its enlargement
        const Point member = sampler.member_point(rng, *set);
        CHECK(e.distance(member) == 0.0);
    }
}
