#include <benchmark/benchmark.h>

#include "graphmean/data.hpp"
#include "graphmean/means.hpp"
#include "graphmean/rng.hpp"

using namespace graphmean;

namespace {

Sample letter_sample(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    AttributedGraph proto(5, 2);
    for (int i = 0; i < 5; ++i) proto.set_attr(i, i, {rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)});
    for (int i = 0; i + 1 < 5; ++i) proto.set_attr(i, i + 1, {1.0, 0.5});
    GeneratorSpec spec;
    spec.prototype = proto;
    spec.noise_sigma = 0.1;
    spec.count = n;
    spec.seed = rng.next();
    return generate(spec).sample;
}

} // namespace

static void MmmBySampleSize(benchmark::State& state) {
    const Sample s = letter_sample(static_cast<int>(state.range(0)), 11);
    MeanConfig cfg;
    cfg.seed = 12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmm(s, cfg));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(MmmBySampleSize)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void SingleLoopAlgorithms(benchmark::State& state) {
    const Sample s = letter_sample(16, 13);
    MeanConfig cfg;
    cfg.seed = 14;
    const char* names[] = {"BAM", "IAM", "GNJ", "PAC", "MED"};
    const std::string algorithm = names[state.range(0)];
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_mean(algorithm, s, cfg));
    }
}
BENCHMARK(SingleLoopAlgorithms)->DenseRange(0, 4, 1);

BENCHMARK_MAIN();
