#include <benchmark/benchmark.h>

#include "noisynet/density.hpp"

using namespace noisynet;

namespace {

AdjacencyMatrix graph(std::size_t p) { return sample_noisy(AdjacencyMatrix(p), {0.2, 0.0}, 3); }

const SubgraphPattern& pattern(int which) {
    static const SubgraphPattern all[] = {SubgraphPattern::edge(), SubgraphPattern::two_star(),
                                          SubgraphPattern::triangle(), SubgraphPattern::path(3)};
    return all[which];
}

}  // namespace

static void BM_PatternSumsFast(benchmark::State& state) {
    const auto y = graph(static_cast<std::size_t>(state.range(1)));
    const auto& pat = pattern(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pattern_sums(y, pat, 0.05, 0.15, true));
    state.SetLabel(pat.name());
}
BENCHMARK(BM_PatternSumsFast)->ArgsProduct({{0, 1, 2}, {50, 200, 800}});

static void BM_PatternSumsEnumerated(benchmark::State& state) {
    const auto y = graph(static_cast<std::size_t>(state.range(1)));
    const auto& pat = pattern(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_pattern_sums(y, pat, 0.05, 0.15, true));
    state.SetLabel(pat.name());
}
BENCHMARK(BM_PatternSumsEnumerated)->ArgsProduct({{1, 2, 3}, {20, 40}});

static void BM_CHat(benchmark::State& state) {
    const auto y = graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(c_hat(y, SubgraphPattern::triangle(), 0.05, 0.15));
}
BENCHMARK(BM_CHat)->RangeMultiplier(4)->Range(50, 800);
