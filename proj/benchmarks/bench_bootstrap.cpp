#include <benchmark/benchmark.h>

#include <vector>

#include "noisynet/bootstrap.hpp"

using namespace noisynet;

namespace {

AdjacencyMatrix graph(std::size_t p) { return sample_noisy(AdjacencyMatrix(p), {0.1, 0.0}, 5); }

}  // namespace

static void BM_SampleDagger(benchmark::State& state) {
    const auto y = graph(static_cast<std::size_t>(state.range(0)));
    const auto g = solve_gamma(0.05, 0.15);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_dagger(y, g, ++seed));
}
BENCHMARK(BM_SampleDagger)->RangeMultiplier(4)->Range(50, 800);

static void BM_SDagger(benchmark::State& state) {
    const auto y = graph(static_cast<std::size_t>(state.range(0)));
    const auto g = solve_gamma(0.05, 0.15);
    const auto d = sample_dagger(y, g, 1);
    for (auto _ : state) benchmark::DoNotOptimize(s_dagger(y, d, SubgraphPattern::triangle(), 0.05, 0.15, g));
}
BENCHMARK(BM_SDagger)->RangeMultiplier(4)->Range(50, 800);

static void BM_BootstrapV1(benchmark::State& state) {
    const auto y = graph(static_cast<std::size_t>(state.range(0)));
    const std::vector<SubgraphPattern> pats{SubgraphPattern::two_star(), SubgraphPattern::triangle()};
    BootstrapOptions opts;
    opts.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(bootstrap_v1(y, pats, 0.05, 0.15, 100, 7, opts));
}
BENCHMARK(BM_BootstrapV1)->Arg(30)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_SolveGamma(benchmark::State& state) {
    double a = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_gamma(a, 0.15));
        a = a < 0.2 ? a + 1e-6 : 0.01;
    }
}
BENCHMARK(BM_SolveGamma);
