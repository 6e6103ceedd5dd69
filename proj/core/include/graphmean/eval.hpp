#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "graphmean/data.hpp"
#include "graphmean/means.hpp"

namespace graphmean {

// Outcome of one mean algorithm on one sample; performance is the sample
// dispersion (or another nonnegative measure such as iteration count).
struct RunRecord {
    std::string algorithm;
    std::string sample_id;
    double performance;
    long long matchings;
    std::uint64_t seed;
};

// Ratio to the per-sample best: r = p / min(p). When the best performance is
// 0, algorithms at 0 get ratio 1 and the rest +infinity.
std::map<std::string, double> performance_ratio(std::span<const RunRecord> sample_records);

// Empirical CDF of performance ratios for one algorithm.
struct PerformanceProfile {
    std::string algorithm;
    std::vector<double> ratios;                   // sorted; may contain +inf
    std::vector<std::pair<double, double>> curve; // (tau, P) breakpoints
    double tau_max;                               // worst finite ratio
    double wins;                                  // P(1)

    double value(double tau) const; // P(tau)
};

std::vector<PerformanceProfile> performance_profile(std::span<const RunRecord> records);

// Pairwise win percentages: beats[i][j] is the percentage of samples where
// algorithm i is strictly better than j; ties count for neither side, so
// beats[i][j] + beats[j][i] + ties = 100.
struct PairwiseComparison {
    std::vector<std::string> algorithms;
    std::vector<std::vector<double>> beats;
    std::vector<int> wins;                 // competitions won (beats > beaten)
    std::vector<double> total_percent;     // mean of beats[i][j] over j != i
};

PairwiseComparison pairwise_comparison(std::span<const RunRecord> records);

// Benchmark protocols: random subsets of each dataset, or one sample per
// class (training split when present) replicated.
struct RandomSamplesProtocol {
    int count = 20;
    std::pair<int, int> size_range{3, 10};
    std::uint64_t seed = 0;
};

struct ClassSamplesProtocol {
    int replicates = 1;
};

using BenchmarkProtocol = std::variant<RandomSamplesProtocol, ClassSamplesProtocol>;

// SGG constant-step grid used by the benchmark protocols.
inline constexpr double kSggStepGrid[] = {0.9, 0.3, 0.1, 0.07, 0.03, 0.01, 0.007, 0.003, 0.001};

// number of SGG tuning trials per class under the class protocol
inline constexpr int kSggClassTuningTrials = 10;

// Runs every algorithm on every sample with per-trial seeds; performance is
// the sample dispersion. SGG takes the best dispersion over the step grid
// under the random protocol and pre-selects the step per class (best average
// dispersion over 10 trials) under the class protocol.
std::vector<RunRecord> benchmark(std::span<const Dataset> datasets,
                                 std::span<const std::string> algorithms,
                                 const BenchmarkProtocol& protocol, const MeanConfig& cfg);

struct ConsistencyRow {
    int n;
    double median_distance;             // median d(mean_n, prototype)
    double median_normalized_variation; // median V_n / n
};

// Draws samples of growing size around a prototype and tracks how close the
// computed mean gets to it.
std::vector<ConsistencyRow> consistency_simulation(const AttributedGraph& prototype, double noise,
                                                   std::span<const int> n_grid, int trials,
                                                   const MeanConfig& cfg);

struct ClassificationReport {
    double accuracy;
    std::vector<std::string> classes;        // sorted
    std::vector<std::vector<int>> confusion; // rows: true class, cols: predicted
};

// 1-nearest-neighbor under the graph edit kernel metric; distance ties go to
// the smallest class index, then the smallest training index.
ClassificationReport nn_classify(const Dataset& train, const Dataset& test,
                                 const SolverConfig& cfg = {});

// One mean prototype per class, computed with the chosen algorithm.
std::map<std::string, AttributedGraph> condensed_prototypes(const Dataset& train,
                                                            std::string_view algorithm,
                                                            const MeanConfig& cfg = {});

// Training set reduced to the per-class prototypes.
Dataset condensed_dataset(const Dataset& train, std::string_view algorithm,
                          const MeanConfig& cfg = {});

// CSV emission with documented headers; rows sorted for byte determinism.
std::string records_csv(std::span<const RunRecord> records);
std::string profiles_csv(std::span<const PerformanceProfile> profiles);
std::string pairwise_csv(const PairwiseComparison& comparison);

} // namespace graphmean
