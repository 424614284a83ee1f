#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "dirichlet/moment.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/spectral.hpp"
#include "dirichlet/taylor.hpp"
#include "dirichlet/uniqueness.hpp"

using namespace dirichlet;

namespace {

DirichletSeries makeSeries(int terms) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> alpha(-1.0, 1.0);
    std::vector<Term> out;
    for (int j = 1; j <= terms; ++j) {
        out.push_back({alpha(rng), j * 0.75});
    }
    return DirichletSeries(std::move(out));
}

void BM_Evaluate(benchmark::State& state) {
    const auto s = makeSeries(static_cast<int>(state.range(0)));
    double t = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(s, t));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evaluate)->RangeMultiplier(4)->Range(16, 4096);

void BM_Expand(benchmark::State& state) {
    const auto s = makeSeries(64);
    const auto order = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(expand(s, 1.0, order));
    }
}
BENCHMARK(BM_Expand)->Arg(10)->Arg(30)->Arg(100)->Arg(300);

void BM_SelectOrder(benchmark::State& state) {
    const auto s = makeSeries(64);
    for (auto _ : state) {
        benchmark::DoNotOptimize(selectOrder(s, 1.0, 1.5, 1e-12));
    }
}
BENCHMARK(BM_SelectOrder);

void BM_MomentSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    MomentProblem problem;
    for (int j = 1; j <= n; ++j) {
        problem.exponents.push_back(spectrum::eigenvalue(j));
        problem.moments.push_back(1.0 / j);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(solveMomentProblem(problem));
    }
}
BENCHMARK(BM_MomentSolve)->DenseRange(2, 8, 2);

void BM_BlockedSet(benchmark::State& state) {
    const auto act = Actuator::parse("3/10", "7/10");
    const int jMax = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(blockedSet(act, jMax));
    }
}
BENCHMARK(BM_BlockedSet)->Arg(256)->Arg(4096);

void BM_ZeroTest(benchmark::State& state) {
    const auto s = makeSeries(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(isIdenticallyZero(s, 1.0, 1e-12));
    }
}
BENCHMARK(BM_ZeroTest)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
