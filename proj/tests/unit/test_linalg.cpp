#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "vpm/linalg.hpp"

using namespace vpm;
using namespace vpm::linalg;

TEST_CASE("inner product") {
    CHECK(inner(Point{1, 0}, Point{0, 1}) == 0.0);
    CHECK(inner(Point{1, 2}, Point{3, 4}) == 11.0);
    const Point x{3, 4};
    CHECK(inner(x, x) == 25.0);
    CHECK_THROWS_AS(inner(Point{1, 2}, Point{1, 2, 3}),
                    std::invalid_argument);
}

TEST_CASE("norm") {
    CHECK(norm(Point{0, 0}) == 0.0);
    CHECK(norm(Point{3, 4}) == 5.0);
    CHECK(norm(Point{1, 1, 1, 1}) == 2.0);
}

TEST_CASE("axpy") {
    const Point a{1, 1};
    const Point b{2, 3};
    CHECK(axpy(0.0, a, b) == b);
    CHECK(axpy(1.0, a, b) == Point{3, 4});
    CHECK(axpy(-1.0, a, a) == Point{0, 0});
    CHECK_THROWS_AS(axpy(1.0, a, Point{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("construction rejects non-finite and empty") {
    CHECK_THROWS_AS(Point{std::vector<double>{}}, std::invalid_argument);
    CHECK_THROWS_AS((Point{1.0, std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);
    CHECK_THROWS_AS((Point{std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
}

TEST_CASE("Cauchy-Schwarz on random samples") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> ac(7), bc(7);
        for (auto& c : ac) c = coord(rng);
        for (auto& c : bc) c = coord(rng);
        const Point a(ac), b(bc);
        CHECK(std::abs(inner(a, b)) <= norm(a) * norm(b) + 1e-12);
        // distance symmetry, exactly
        CHECK(norm(axpy(-1.0, a, b)) == norm(axpy(-1.0, b, a)));
    }
}
