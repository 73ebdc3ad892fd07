#include <benchmark/benchmark.h>

#include "noisynet/adjacency.hpp"
#include "noisynet/generator.hpp"
#include "noisynet/moments.hpp"

using namespace noisynet;

namespace {

AdjacencyMatrix noisy_graph(std::size_t p, double density) {
    AdjacencyMatrix empty(p);
    return sample_noisy(empty, {density, 0.0}, 1);
}

}  // namespace

static void BM_CountTriangles(benchmark::State& state) {
    const auto a = noisy_graph(static_cast<std::size_t>(state.range(0)), 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(count_triangles(a));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountTriangles)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

static void BM_CountTwoStars(benchmark::State& state) {
    const auto a = noisy_graph(static_cast<std::size_t>(state.range(0)), 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(count_two_stars(a));
}
BENCHMARK(BM_CountTwoStars)->RangeMultiplier(4)->Range(64, 2048);

static void BM_SampleNoisy(benchmark::State& state) {
    const auto a = noisy_graph(static_cast<std::size_t>(state.range(0)), 0.1);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_noisy(a, {0.05, 0.15}, ++seed));
}
BENCHMARK(BM_SampleNoisy)->RangeMultiplier(4)->Range(64, 1024);

static void BM_Moments(benchmark::State& state) {
    const auto a = noisy_graph(static_cast<std::size_t>(state.range(0)), 0.1);
    std::vector<AdjacencyMatrix> ys;
    for (int t = 0; t < 3; ++t) ys.push_back(sample_noisy(a, {0.05, 0.15}, t));
    for (auto _ : state) benchmark::DoNotOptimize(moments_from_replicates(ys));
}
BENCHMARK(BM_Moments)->RangeMultiplier(4)->Range(64, 1024);

static void BM_Generator(benchmark::State& state) {
    const auto t = GraphTargets::from_density(50, 0.2, 2300, 140);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(generate_constrained(t, ++seed));
}
BENCHMARK(BM_Generator)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
