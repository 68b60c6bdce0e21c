#include <benchmark/benchmark.h>

#include <cmath>

#include "ambc/analytic.hpp"
#include "ambc/beta_estimator.hpp"
#include "ambc/montecarlo.hpp"
#include "ambc/quadrature.hpp"

using namespace ambc;

static void BM_Quadrature1d(benchmark::State& state)
{
    auto f = [](double r) { return r / (std::pow(r, 3.5) + 1.0); };
    for (auto _ : state) benchmark::DoNotOptimize(quad::integrate_1d(f, 0.0, 10.0).value);
}
BENCHMARK(BM_Quadrature1d);

static void BM_LaplaceDirect(benchmark::State& state)
{
    double s = 0.5;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(analytic::laplace_double_fading_complement(s, 1.0));
        s = s < 100.0 ? s * 1.01 : 0.5;
    }
}
BENCHMARK(BM_LaplaceDirect);

static void BM_LaplaceCached(benchmark::State& state)
{
    double s = 0.5;
    analytic::cached_laplace_complement(s, 1.0);  // build the table outside the loop
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(analytic::cached_laplace_complement(s, 1.0));
        s = s < 100.0 ? s * 1.01 : 0.5;
    }
}
BENCHMARK(BM_LaplaceCached);

static void BM_TypicalClusterFactor(benchmark::State& state)
{
    SystemParams p;
    p.beta = 0.3;
    for (auto _ : state) benchmark::DoNotOptimize(analytic::xi1(p));
}
BENCHMARK(BM_TypicalClusterFactor)->Unit(benchmark::kMillisecond);

static void BM_Coverage(benchmark::State& state)
{
    SystemParams p;
    p.beta = state.range(1) / 10.0;
    auto const s = static_cast<Scenario>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(analytic::coverage(p, s, Metric::sinr));
}
BENCHMARK(BM_Coverage)->ArgsProduct({{0, 1, 2}, {3, 8}})->Unit(benchmark::kMillisecond);

static void BM_EstimateBeta(benchmark::State& state)
{
    BetaGeomParams g;
    for (auto _ : state) benchmark::DoNotOptimize(analytic::estimate_beta(25.0, 10.0, 3.5, g).beta);
}
BENCHMARK(BM_EstimateBeta)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloTrials(benchmark::State& state)
{
    SystemParams const p;
    auto const s = static_cast<Scenario>(state.range(0));
    mc::RunOptions opts;
    opts.threads = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(mc::simulate_powers(p, s, 1000, 7, opts));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_MonteCarloTrials)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
