#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "vpm/operators.hpp"
#include "vpm/solver.hpp"

namespace {

using namespace vpm;

Point random_point(std::mt19937_64& rng, std::size_t dim, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> coords(dim);
    for (double& c : coords) c = u(rng);
    return Point(std::move(coords));
}

void BM_ValiantApply(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(7);
    std::vector<double> normal(dim, 0.0);
    normal[0] = 1.0;
    const ValiantOperator op(
        std::make_shared<Hyperplane>(Point(std::move(normal)), 0.0), 1.0,
        1.0);
    const Point x = random_point(rng, dim, 10.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(op.apply(x));
    }
}
BENCHMARK(BM_ValiantApply)->Arg(2)->Arg(20)->Arg(200);

void BM_BallProjection(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(11);
    const Ball ball(Point::zeros(dim), 1.0);
    const Point x = random_point(rng, dim, 10.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ball.project(x));
    }
}
BENCHMARK(BM_BallProjection)->Arg(2)->Arg(20)->Arg(200);

void BM_CyclicSolve(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    std::vector<ConvexSetPtr> sets;
    std::vector<double> betas;
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<double> normal(dim, 0.0);
        for (double& c : normal) {
            c = std::uniform_real_distribution<double>(-1, 1)(rng);
        }
        sets.push_back(
            std::make_shared<Hyperplane>(Point(std::move(normal)), 0.0));
        betas.push_back(0.5);
    }
    const FeasibilityProblem problem(std::move(sets), std::move(betas));
    const Point x0 = random_point(rng, dim, 20.0);
    SolverConfig cfg;
    cfg.record_trace = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(vpm_solve(problem, cfg, x0));
    }
}
BENCHMARK(BM_CyclicSolve)->Arg(2)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
