#include <benchmark/benchmark.h>

#include "pdpp/dickman.hpp"
#include "pdpp/asymptotics.hpp"
#include "pdpp/rng.hpp"
#include "pdpp/sampler.hpp"
#include "pdpp/volterra.hpp"

namespace {

void BM_BetaDraw(benchmark::State& state) {
    pdpp::RngStream rng(1, 0);
    const double b = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(pdpp::beta_pair(0.5, b, rng));
}
BENCHMARK(BM_BetaDraw)->Arg(5)->Arg(100)->Arg(10000);

void BM_TopM(benchmark::State& state) {
    pdpp::RngStream rng(1, 0);
    const pdpp::PDParams p{0.3, static_cast<double>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(pdpp::top_m(p, 1, rng));
}
BENCHMARK(BM_TopM)->Arg(1)->Arg(100)->Arg(1000);

void BM_SampleH2(benchmark::State& state) {
    pdpp::RngStream rng(1, 0);
    const pdpp::PDParams p{0.0, static_cast<double>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(pdpp::sample_Hp(p, 2.0, rng, 1e-9));
}
BENCHMARK(BM_SampleH2)->Arg(10)->Arg(10000);

void BM_RhoSeries(benchmark::State& state) {
    const pdpp::PDParams p{0.5, 1.0};
    const double s = static_cast<double>(state.range(0)) + 0.5;
    pdpp::rho_series(p, s);
    for (auto _ : state) benchmark::DoNotOptimize(pdpp::rho_series(p, s));
}
BENCHMARK(BM_RhoSeries)->DenseRange(1, 3);

void BM_VolterraMarch(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pdpp::volterra_march(0.5, 1.0, pdpp::MarchGrid{8.0, h}));
}
BENCHMARK(BM_VolterraMarch)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_RenewalTable(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(pdpp::rho_table({0.0, 1.0}, 10.0, 1.0 / 64.0, pdpp::RhoMethod::renewal));
}
BENCHMARK(BM_RenewalTable)->Unit(benchmark::kMillisecond);

void BM_Q1Integral(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pdpp::q1_integral({0.5, 0.5}, 0.05, 0.0975));
}
BENCHMARK(BM_Q1Integral);

} // namespace

BENCHMARK_MAIN();
