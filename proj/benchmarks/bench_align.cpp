#include <benchmark/benchmark.h>

#include "graphmean/align.hpp"
#include "graphmean/rng.hpp"

using namespace graphmean;

namespace {

AttributedGraph random_graph(SplitMix64& rng, int order, int dim) {
    AttributedGraph g(order, dim);
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < order; ++i) {
        for (double& x : v) x = rng.uniform(-1.0, 1.0);
        g.set_attr(i, i, v);
    }
    for (int i = 0; i < order; ++i)
        for (int j = i + 1; j < order; ++j) {
            if (rng.uniform01() >= 0.5) continue;
            for (double& x : v) x = rng.uniform(-1.0, 1.0);
            g.set_attr(i, j, v);
        }
    return g;
}

} // namespace

static void ExactAlignment(benchmark::State& state) {
    SplitMix64 rng(1);
    const int order = static_cast<int>(state.range(0));
    const AttributedGraph x = random_graph(rng, order, 2);
    const AttributedGraph y = random_graph(rng, order, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(align_exact(x, y, order));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ExactAlignment)->DenseRange(4, 10, 1)->Complexity();

static void HeuristicAlignment(benchmark::State& state) {
    SplitMix64 rng(2);
    const int order = static_cast<int>(state.range(0));
    const AttributedGraph x = random_graph(rng, order, 2);
    const AttributedGraph y = random_graph(rng, order, 2);
    SolverConfig cfg;
    cfg.seed = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(align_heuristic(x, y, cfg));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(HeuristicAlignment)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void DistanceMatrix(benchmark::State& state) {
    SplitMix64 rng(4);
    Sample s;
    for (int i = 0; i < static_cast<int>(state.range(0)); ++i)
        s.graphs.push_back(random_graph(rng, 6, 2));
    const SolverConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance_matrix(s, cfg, true));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(DistanceMatrix)->RangeMultiplier(2)->Range(4, 32)->Complexity();

BENCHMARK_MAIN();
