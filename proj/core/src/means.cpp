#include "graphmean/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "graphmean/detail/compensated_sum.hpp"
#include "graphmean/rng.hpp"

namespace graphmean {

namespace {

using detail::CompensatedSum;

constexpr std::uint64_t kInitStream = 0x11;
constexpr std::uint64_t kOrderStream = 0x22;

struct PaddedSample {
    std::vector<AttributedGraph> graphs; // all padded to a common order
    int order;
};

PaddedSample pad_sample(const Sample& s, int min_order) {
    PaddedSample out;
    out.order = std::max(s.max_order(), min_order);
    out.graphs.reserve(s.graphs.size());
    for (const AttributedGraph& g : s.graphs) out.graphs.push_back(pad(g, out.order));
    return out;
}

// One loop through the sample: every graph aligned to m; yields the aligned
// representations and the squared-loss Frechet value at m.
struct Pass {
    std::vector<AttributedGraph> aligned;
    double variation;
};

Pass align_pass(const std::vector<AttributedGraph>& padded, const AttributedGraph& m,
                const SolverConfig& solver) {
    Pass pass;
    pass.aligned.reserve(padded.size());
    CompensatedSum sum;
    for (const AttributedGraph& x : padded) {
        const Alignment a = align(x, m, solver);
        pass.aligned.push_back(permute(x, a.perm));
        sum.add(a.cost * a.cost);
    }
    pass.variation = sum.value();
    return pass;
}

// squared-loss Frechet value only, no aligned representations kept
double variation_at(const std::vector<AttributedGraph>& padded, const AttributedGraph& m,
                    const SolverConfig& solver) {
    CompensatedSum sum;
    for (const AttributedGraph& x : padded) {
        const double d = align(x, m, solver).cost;
        sum.add(d * d);
    }
    return sum.value();
}

// termination rule: relative improvement below tol does not reset the clock
bool improves(double best, double candidate, double rel_tol) {
    return candidate < best - rel_tol * best;
}

struct MedoidResult {
    int index;
    std::vector<double> row_sums;
    std::vector<std::vector<double>> squared_matrix;
};

MedoidResult medoid_of(const Sample& s, const SolverConfig& solver) {
    MedoidResult result;
    result.squared_matrix = distance_matrix(s, solver, /*squared=*/true);
    const int n = s.size();
    result.row_sums.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        CompensatedSum sum;
        for (int j = 0; j < n; ++j)
            sum.add(result.squared_matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        result.row_sums[static_cast<std::size_t>(i)] = sum.value();
    }
    result.index = 0;
    for (int i = 1; i < n; ++i)
        if (result.row_sums[static_cast<std::size_t>(i)] <
            result.row_sums[static_cast<std::size_t>(result.index)])
            result.index = i;
    return result;
}

void validate_config(const MeanConfig& cfg) {
    if (cfg.waiting_time < 1) throw std::invalid_argument("means: waiting_time must be >= 1");
    if (cfg.max_iterations < 1) throw std::invalid_argument("means: max_iterations must be >= 1");
    if (cfg.improvement_tol < 0.0)
        throw std::invalid_argument("means: improvement_tol must be nonnegative");
}

// Initial solution, already padded to the working order. Adds any distance
// matrix spent on a Medoid initialization to `matchings`.
AttributedGraph initial_solution(const Sample& s, const PaddedSample& padded,
                                 const MeanConfig& cfg, long long& matchings) {
    switch (cfg.init_policy) {
        case InitPolicy::RandomSampleGraph: {
            SplitMix64 rng(mix64(cfg.seed, kInitStream));
            return padded.graphs[static_cast<std::size_t>(rng.below(
                static_cast<std::uint64_t>(padded.graphs.size())))];
        }
        case InitPolicy::Given: {
            if (!cfg.init_graph) throw std::invalid_argument("means: init_policy Given needs init_graph");
            if (cfg.init_graph->attr_dim() != s.attr_dim())
                throw std::invalid_argument("means: init graph attribute dimension mismatch");
            return pad(*cfg.init_graph, padded.order);
        }
        case InitPolicy::Medoid: {
            const MedoidResult medoid = medoid_of(s, cfg.solver);
            matchings += static_cast<long long>(s.size()) * (s.size() - 1) / 2;
            return padded.graphs[static_cast<std::size_t>(medoid.index)];
        }
    }
    throw std::invalid_argument("means: unknown init policy");
}

int working_order(const Sample& s, const MeanConfig& cfg) {
    int order = s.max_order();
    if (cfg.init_policy == InitPolicy::Given && cfg.init_graph)
        order = std::max(order, cfg.init_graph->order());
    return order;
}

// presentation order for incremental algorithms
std::vector<int> presentation_order(const Sample& s, const PaddedSample& padded,
                                    const MeanConfig& cfg, long long& matchings) {
    const int n = s.size();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    switch (cfg.order_policy) {
        case OrderPolicy::AsGiven:
            return order;
        case OrderPolicy::Shuffled: {
            SplitMix64 rng(mix64(cfg.seed, kOrderStream));
            rng.shuffle(order);
            return order;
        }
        case OrderPolicy::IncreasingFromReference: {
            // reference is the initial solution; stable sort keeps index ties
            AttributedGraph ref = initial_solution(s, padded, cfg, matchings);
            std::vector<double> dist(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                dist[static_cast<std::size_t>(i)] = align(padded.graphs[static_cast<std::size_t>(i)], ref, cfg.solver).cost;
            matchings += n;
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
            });
            return order;
        }
    }
    throw std::invalid_argument("means: unknown order policy");
}

// in-place incremental fusion step M += eta * (X - M)
void fuse_towards(AttributedGraph& m, const AttributedGraph& x_aligned, double eta) {
    double* pm = m.raw();
    const double* px = x_aligned.raw();
    for (std::size_t t = 0; t < m.values().size(); ++t) pm[t] += eta * (px[t] - pm[t]);
}

// report-only Frechet evaluation of a single-loop output
void finish_single_loop(MeanEstimate& est, const std::vector<AttributedGraph>& padded,
                        const SolverConfig& solver) {
    est.best_variation = variation_at(padded, est.mean, solver);
    est.variation_trace = {est.best_variation};
    est.iterations = 1;
    est.iterations_until_best = 1;
    est.matchings_until_best = est.matchings_solved;
    est.evaluation_matchings = static_cast<long long>(padded.size());
}

// shared single pass: used by IAM directly and by GNJ with a fixed head
MeanEstimate incremental_pass(const Sample& s, const MeanConfig& cfg, std::vector<int> order,
                              int first_k, AttributedGraph m, long long matchings,
                              std::string name) {
    const PaddedSample padded = pad_sample(s, 0);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const int k = first_k + static_cast<int>(pos);
        const AttributedGraph& x = padded.graphs[static_cast<std::size_t>(order[pos])];
        const Alignment a = align(x, m, cfg.solver);
        fuse_towards(m, permute(x, a.perm), 1.0 / static_cast<double>(k));
        ++matchings;
    }
    MeanEstimate est{std::move(m), {}, 0.0, 0, 0, matchings, 0, 0, std::move(name)};
    finish_single_loop(est, padded.graphs, cfg.solver);
    return est;
}

} // namespace

MeanEstimate mmm(const Sample& s, const MeanConfig& cfg) {
    s.require_valid();
    validate_config(cfg);
    const int n = s.size();
    const PaddedSample padded = pad_sample(s, working_order(s, cfg));
    long long matchings = 0;
    AttributedGraph m = initial_solution(s, padded, cfg, matchings);

    MeanEstimate est{m, {}, std::numeric_limits<double>::infinity(), 0, 0, 0, 0, 0, "MMM"};
    double waiting_best = std::numeric_limits<double>::infinity();
    int no_improve = 0;
    int pass_count = 0;
    while (pass_count < cfg.max_iterations) {
        Pass pass = align_pass(padded.graphs, m, cfg.solver);
        matchings += n;
        ++pass_count;
        est.variation_trace.push_back(pass.variation);
        if (pass.variation < est.best_variation) {
            est.best_variation = pass.variation;
            est.mean = m;
            est.iterations_until_best = pass_count;
        }
        if (pass_count == 1 || improves(waiting_best, pass.variation, cfg.improvement_tol)) {
            waiting_best = std::min(waiting_best, pass.variation);
            no_improve = 0;
        } else {
            ++no_improve;
        }
        if (no_improve >= cfg.waiting_time) break;

        const std::vector<double> weights(pass.aligned.size(),
                                          1.0 / static_cast<double>(pass.aligned.size()));
        m = blend(pass.aligned, weights);
    }
    est.iterations = pass_count;
    est.matchings_solved = matchings;
    est.matchings_until_best = matchings - static_cast<long long>(pass_count - est.iterations_until_best) * n;
    return est;
}

MeanEstimate sgg(const Sample& s, const MeanConfig& cfg) {
    s.require_valid();
    validate_config(cfg);
    if (cfg.step_schedule == StepSchedule::Constant && !(cfg.step_size > 0.0))
        throw std::invalid_argument("sgg: step_size must be positive");
    const int n = s.size();
    const PaddedSample padded = pad_sample(s, working_order(s, cfg));
    long long matchings = 0;
    AttributedGraph m = initial_solution(s, padded, cfg, matchings);

    MeanEstimate est{m, {}, 0.0, 0, 0, 0, 0, 0, "SGG"};
    est.best_variation = variation_at(padded.graphs, m, cfg.solver);
    matchings += n;
    est.variation_trace.push_back(est.best_variation);
    long long matchings_at_best = matchings;

    SplitMix64 order_rng(mix64(cfg.seed, kOrderStream));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    double waiting_best = est.best_variation;
    int no_improve = 0;
    int cycle = 0;
    long long presented = 0;
    while (cycle < cfg.max_iterations) {
        if (cfg.order_policy == OrderPolicy::Shuffled) order_rng.shuffle(order);
        for (int idx : order) {
            const AttributedGraph& x = padded.graphs[static_cast<std::size_t>(idx)];
            const Alignment a = align(x, m, cfg.solver);
            ++presented;
            const double eta = cfg.step_schedule == StepSchedule::Constant
                                   ? cfg.step_size
                                   : 1.0 / static_cast<double>(presented);
            fuse_towards(m, permute(x, a.perm), eta);
        }
        matchings += n;
        ++cycle;
        const double v = variation_at(padded.graphs, m, cfg.solver);
        matchings += n;
        est.variation_trace.push_back(v);
        if (v < est.best_variation) {
            est.best_variation = v;
            est.mean = m;
            est.iterations_until_best = cycle;
            matchings_at_best = matchings;
        }
        if (improves(waiting_best, v, cfg.improvement_tol)) {
            waiting_best = v;
            no_improve = 0;
        } else {
            ++no_improve;
        }
        if (no_improve >= cfg.waiting_time) break;
    }
    est.iterations = cycle;
    est.matchings_solved = matchings;
    est.matchings_until_best = matchings_at_best;
    return est;
}

MeanEstimate bam(const Sample& s, const MeanConfig& cfg) {
    s.require_valid();
    const PaddedSample padded = pad_sample(s, working_order(s, cfg));
    long long matchings = 0;
    const AttributedGraph m0 = initial_solution(s, padded, cfg, matchings);
    Pass pass = align_pass(padded.graphs, m0, cfg.solver);
    matchings += s.size();
    const std::vector<double> weights(pass.aligned.size(),
                                      1.0 / static_cast<double>(pass.aligned.size()));
    MeanEstimate est{blend(pass.aligned, weights), {}, 0.0, 0, 0, matchings, 0, 0, "BAM"};
    finish_single_loop(est, padded.graphs, cfg.solver);
    return est;
}

MeanEstimate iam(const Sample& s, const MeanConfig& cfg) {
    s.require_valid();
    long long matchings = 0;
    const PaddedSample padded = pad_sample(s, 0);
    std::vector<int> order = presentation_order(s, padded, cfg, matchings);
    // the first presented graph is the start solution; presenting it to
    // itself is the k = 1 step of the 1/k schedule and counts as a matching
    AttributedGraph m = padded.graphs[static_cast<std::size_t>(order.front())];
    return incremental_pass(s, cfg, std::move(order), 1, std::move(m), matchings, "IAM");
}

MeanEstimate gnj(const Sample& s, const MeanConfig& cfg) {
    s.require_valid();
    const int n = s.size();
    const MedoidResult medoid = medoid_of(s, cfg.solver);
    long long matchings = static_cast<long long>(n) * (n - 1) / 2;

    const auto& row = medoid.squared_matrix[static_cast<std::size_t>(medoid.index)];
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n; ++i)
        if (i != medoid.index) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return row[static_cast<std::size_t>(a)] < row[static_cast<std::size_t>(b)];
    });

    const PaddedSample padded = pad_sample(s, 0);
    AttributedGraph m = padded.graphs[static_cast<std::size_t>(medoid.index)];
    return incremental_pass(s, cfg, std::move(order), 2, std::move(m), matchings, "GNJ");
}

MeanEstimate pac(const Sample& s, const MeanConfig& cfg) {
    s.require_valid();
    const int n = s.size();
    const auto matrix = distance_matrix(s, cfg.solver, /*squared=*/false);
    long long matchings = static_cast<long long>(n) * (n - 1) / 2;
    const PaddedSample padded = pad_sample(s, 0);

    struct Cluster {
        std::vector<int> members; // sorted; front() is the cluster id
        AttributedGraph rep;
    };
    std::vector<Cluster> clusters;
    clusters.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        clusters.push_back({{i}, padded.graphs[static_cast<std::size_t>(i)]});

    while (clusters.size() > 1) {
        // single linkage on the original distances; ties resolve to the
        // smallest (id, id) pair
        std::size_t best_a = 0, best_b = 1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < clusters.size(); ++a)
            for (std::size_t b = a + 1; b < clusters.size(); ++b) {
                double link = std::numeric_limits<double>::infinity();
                for (int i : clusters[a].members)
                    for (int j : clusters[b].members)
                        link = std::min(link,
                                        matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                const auto key = std::tuple(link, std::min(clusters[a].members.front(),
                                                           clusters[b].members.front()),
                                            std::max(clusters[a].members.front(),
                                                     clusters[b].members.front()));
                const auto best_key = std::tuple(best_dist,
                                                 std::min(clusters[best_a].members.front(),
                                                          clusters[best_b].members.front()),
                                                 std::max(clusters[best_a].members.front(),
                                                          clusters[best_b].members.front()));
                if (key < best_key) {
                    best_dist = link;
                    best_a = a;
                    best_b = b;
                }
            }

        Cluster& ca = clusters[best_a];
        Cluster& cb = clusters[best_b];
        // the smaller cluster's representative is aligned into the larger
        // one's frame; equal sizes keep the smaller-id frame
        const bool a_is_large = ca.members.size() != cb.members.size()
                                    ? ca.members.size() > cb.members.size()
                                    : ca.members.front() < cb.members.front();
        Cluster& large = a_is_large ? ca : cb;
        Cluster& small = a_is_large ? cb : ca;
        const Alignment a = align(small.rep, large.rep, cfg.solver);
        ++matchings;
        const double total = static_cast<double>(large.members.size() + small.members.size());
        const double w_small = static_cast<double>(small.members.size()) / total;
        const double w_large = static_cast<double>(large.members.size()) / total;
        std::vector<int> merged_members;
        merged_members.reserve(ca.members.size() + cb.members.size());
        std::merge(ca.members.begin(), ca.members.end(), cb.members.begin(), cb.members.end(),
                   std::back_inserter(merged_members));
        Cluster merged{std::move(merged_members),
                       blend({permute(small.rep, a.perm), large.rep}, {w_small, w_large})};
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
        clusters[best_a] = std::move(merged);
    }

    MeanEstimate est{std::move(clusters.front().rep), {}, 0.0, 0, 0, matchings, 0, 0, "PAC"};
    finish_single_loop(est, padded.graphs, cfg.solver);
    return est;
}

MeanEstimate med(const Sample& s, const MeanConfig& cfg) {
    s.require_valid();
    const int n = s.size();
    const MedoidResult medoid = medoid_of(s, cfg.solver);
    const double variation = medoid.row_sums[static_cast<std::size_t>(medoid.index)];
    MeanEstimate est{s.graphs[static_cast<std::size_t>(medoid.index)],
                     {variation},
                     variation,
                     1,
                     1,
                     static_cast<long long>(n) * (n - 1) / 2,
                     static_cast<long long>(n) * (n - 1) / 2,
                     0,
                     "MED"};
    return est;
}

MeanEstimate run_mean(std::string_view algorithm, const Sample& s, const MeanConfig& cfg) {
    if (algorithm == "MMM") return mmm(s, cfg);
    if (algorithm == "SGG") return sgg(s, cfg);
    if (algorithm == "BAM") return bam(s, cfg);
    if (algorithm == "IAM") return iam(s, cfg);
    if (algorithm == "GNJ") return gnj(s, cfg);
    if (algorithm == "PAC") return pac(s, cfg);
    if (algorithm == "MED") return med(s, cfg);
    throw std::invalid_argument("run_mean: unknown algorithm '" + std::string(algorithm) + "'");
}

const std::vector<std::string>& mean_algorithm_names() {
    static const std::vector<std::string> names{"MMM", "SGG", "BAM", "IAM", "GNJ", "PAC", "MED"};
    return names;
}

} // namespace graphmean
