#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphmean/align.hpp"
#include "graphmean/sample.hpp"

namespace graphmean {

// Presentation order for incremental algorithms (IAM, SGG). GNJ always uses
// ascending distance from the medoid.
enum class OrderPolicy { AsGiven, Shuffled, IncreasingFromReference };

// Initial solution for MMM, BAM and SGG. IAM starts from the first presented
// graph and GNJ from the medoid regardless of this setting.
enum class InitPolicy { RandomSampleGraph, Given, Medoid };

// SGG step size schedule; InverseK over a single cycle reproduces IAM.
enum class StepSchedule { Constant, InverseK };

struct MeanConfig {
    SolverConfig solver{};
    std::uint64_t seed = 0;
    int waiting_time = 10;       // iterations without improvement before stopping
    int max_iterations = 500;
    double improvement_tol = 1e-9; // relative, so termination is scale-free
    double step_size = 0.0;        // SGG with the constant schedule
    StepSchedule step_schedule = StepSchedule::Constant;
    OrderPolicy order_policy = OrderPolicy::Shuffled;
    InitPolicy init_policy = InitPolicy::RandomSampleGraph;
    std::optional<AttributedGraph> init_graph; // for InitPolicy::Given
};

// Output of a mean algorithm.
//
// variation_trace holds the squared-loss Frechet value after each full pass:
// MMM records every evaluated iterate starting with the initial solution,
// SGG records the initial solution plus each cycle, and single-loop
// algorithms (BAM, IAM, GNJ, PAC, MED) record their single output.
// best_variation is always min(variation_trace) and always belongs to the
// reported mean.
//
// matchings_solved counts the graph matching problems the algorithm itself
// solves, the runtime currency of the solver comparison:
//   MED       n(n-1)/2
//   GNJ       n(n-1)/2 + (n-1)
//   PAC       n(n-1)/2 + (n-1)
//   BAM, IAM  n
//   MMM       iterations * n   (each pass both evaluates the current iterate
//                               and produces the next, so evaluation adds 0)
//   SGG       n + iterations * 2n  (init evaluation, then per cycle n updates
//                                   plus n evaluation matchings)
// A Medoid or reference-ordered initialization adds its n(n-1)/2 distance
// matrix on top. evaluation_matchings counts the final report-only Frechet
// evaluation of single-loop outputs, which is excluded from matchings_solved.
struct MeanEstimate {
    AttributedGraph mean;
    std::vector<double> variation_trace;
    double best_variation;
    int iterations;
    int iterations_until_best;
    long long matchings_solved;
    long long matchings_until_best;
    long long evaluation_matchings;
    std::string algorithm;
};

// Majorize-Minimize-Mean: repeatedly align the sample to the current
// representation and replace it by the aligned average; returns the best
// evaluated iterate.
MeanEstimate mmm(const Sample& s, const MeanConfig& cfg = {});

// Stochastic generalized gradient with the descent step M += eta * (X - M).
MeanEstimate sgg(const Sample& s, const MeanConfig& cfg);

// Batch arithmetic mean: exactly one MMM pass from the initial solution.
MeanEstimate bam(const Sample& s, const MeanConfig& cfg = {});

// Incremental arithmetic mean: single pass with step 1/k in presentation
// order.
MeanEstimate iam(const Sample& s, const MeanConfig& cfg = {});

// Greedy neighbor joining: incremental pass seeded at the medoid, remaining
// graphs in ascending distance from it.
MeanEstimate gnj(const Sample& s, const MeanConfig& cfg = {});

// Progressive alignment construction: single-linkage agglomeration, fusing
// cluster representatives with cardinality weights at every merge.
MeanEstimate pac(const Sample& s, const MeanConfig& cfg = {});

// Medoid baseline: the sample element minimizing the squared-distance row
// sum.
MeanEstimate med(const Sample& s, const MeanConfig& cfg = {});

// Dispatch by algorithm identifier (MMM, SGG, BAM, IAM, GNJ, PAC, MED).
MeanEstimate run_mean(std::string_view algorithm, const Sample& s, const MeanConfig& cfg = {});

const std::vector<std::string>& mean_algorithm_names();

} // namespace graphmean
