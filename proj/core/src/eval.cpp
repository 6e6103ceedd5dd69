#include "graphmean/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

#include "graphmean/frechet.hpp"
#include "graphmean/rng.hpp"

namespace graphmean {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

// records grouped by sample_id, preserving first-appearance order of both
// samples and algorithms
struct GroupedRecords {
    std::vector<std::string> algorithms;
    std::vector<std::string> samples;
    // perf[sample][algorithm index], NaN when missing
    std::vector<std::vector<double>> perf;
};

GroupedRecords group(std::span<const RunRecord> records) {
    GroupedRecords g;
    std::map<std::string, std::size_t> alg_index, sample_index;
    for (const RunRecord& r : records) {
        if (alg_index.emplace(r.algorithm, g.algorithms.size()).second)
            g.algorithms.push_back(r.algorithm);
        if (sample_index.emplace(r.sample_id, g.samples.size()).second)
            g.samples.push_back(r.sample_id);
    }
    g.perf.assign(g.samples.size(),
                  std::vector<double>(g.algorithms.size(), std::numeric_limits<double>::quiet_NaN()));
    for (const RunRecord& r : records) {
        double& slot = g.perf[sample_index[r.sample_id]][alg_index[r.algorithm]];
        if (!std::isnan(slot))
            throw std::invalid_argument("eval: duplicate record for (" + r.algorithm + ", " +
                                        r.sample_id + ")");
        slot = r.performance;
    }
    return g;
}

std::vector<double> ratios_for_sample(const std::vector<double>& perf) {
    double best = kInf;
    for (double p : perf)
        if (!std::isnan(p)) best = std::min(best, p);
    std::vector<double> out(perf.size(), kInf);
    for (std::size_t a = 0; a < perf.size(); ++a) {
        const double p = perf[a];
        if (std::isnan(p)) continue; // missing runs count as failures
        if (best == 0.0)
            out[a] = p == 0.0 ? 1.0 : kInf;
        else
            out[a] = p / best;
    }
    return out;
}

} // namespace

std::map<std::string, double> performance_ratio(std::span<const RunRecord> sample_records) {
    if (sample_records.empty())
        throw std::invalid_argument("performance_ratio: no records");
    const std::string& id = sample_records.front().sample_id;
    for (const RunRecord& r : sample_records)
        if (r.sample_id != id)
            throw std::invalid_argument("performance_ratio: records span several samples");
    const GroupedRecords g = group(sample_records);
    const std::vector<double> ratios = ratios_for_sample(g.perf.front());
    std::map<std::string, double> out;
    for (std::size_t a = 0; a < g.algorithms.size(); ++a) out[g.algorithms[a]] = ratios[a];
    return out;
}

double PerformanceProfile::value(double tau) const {
    std::size_t count = 0;
    for (double r : ratios)
        if (r <= tau) ++count;
    return static_cast<double>(count) / static_cast<double>(ratios.size());
}

std::vector<PerformanceProfile> performance_profile(std::span<const RunRecord> records) {
    const GroupedRecords g = group(records);
    const std::size_t n_samples = g.samples.size();
    std::vector<PerformanceProfile> profiles(g.algorithms.size());
    for (std::size_t a = 0; a < g.algorithms.size(); ++a)
        profiles[a].algorithm = g.algorithms[a];
    for (const std::vector<double>& perf : g.perf) {
        const std::vector<double> ratios = ratios_for_sample(perf);
        for (std::size_t a = 0; a < ratios.size(); ++a) profiles[a].ratios.push_back(ratios[a]);
    }
    for (PerformanceProfile& p : profiles) {
        std::sort(p.ratios.begin(), p.ratios.end());
        p.tau_max = 0.0;
        std::size_t wins = 0;
        for (double r : p.ratios) {
            if (r <= 1.0) ++wins;
            if (std::isfinite(r)) p.tau_max = std::max(p.tau_max, r);
        }
        p.wins = static_cast<double>(wins) / static_cast<double>(n_samples);
        // breakpoints at distinct finite ratios
        std::size_t covered = 0;
        for (std::size_t k = 0; k < p.ratios.size();) {
            const double tau = p.ratios[k];
            if (!std::isfinite(tau)) break;
            std::size_t same = k;
            while (same < p.ratios.size() && p.ratios[same] == tau) ++same;
            covered = same;
            p.curve.emplace_back(tau,
                                 static_cast<double>(covered) / static_cast<double>(n_samples));
            k = same;
        }
    }
    return profiles;
}

PairwiseComparison pairwise_comparison(std::span<const RunRecord> records) {
    const GroupedRecords g = group(records);
    const std::size_t k = g.algorithms.size();
    PairwiseComparison cmp;
    cmp.algorithms = g.algorithms;
    cmp.beats.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            std::size_t better = 0, total = 0;
            for (const std::vector<double>& perf : g.perf) {
                const double pi = perf[i];
                const double pj = perf[j];
                if (std::isnan(pi) || std::isnan(pj)) continue;
                ++total;
                if (pi < pj) ++better;
            }
            cmp.beats[i][j] = total == 0
                                  ? 0.0
                                  : 100.0 * static_cast<double>(better) / static_cast<double>(total);
        }
    cmp.wins.assign(k, 0);
    cmp.total_percent.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            sum += cmp.beats[i][j];
            if (cmp.beats[i][j] > cmp.beats[j][i]) ++cmp.wins[static_cast<std::size_t>(i)];
        }
        cmp.total_percent[i] = k > 1 ? sum / static_cast<double>(k - 1) : 0.0;
    }
    return cmp;
}

// ---------------------------------------------------------------------------
// benchmark

namespace {

double dispersion_of(const MeanEstimate& est) { return std::sqrt(est.best_variation); }

RunRecord run_one(const std::string& algorithm, const Sample& sample, const std::string& sample_id,
                  const MeanConfig& base, std::uint64_t trial_seed) {
    MeanConfig cfg = base;
    cfg.seed = trial_seed;
    cfg.solver.seed = mix64(trial_seed, 0x5001);
    const MeanEstimate est = run_mean(algorithm, sample, cfg);
    return RunRecord{algorithm, sample_id, dispersion_of(est), est.matchings_solved, trial_seed};
}

// best dispersion over the step grid, as in the random-samples protocol
RunRecord run_sgg_grid(const Sample& sample, const std::string& sample_id, const MeanConfig& base,
                       std::uint64_t trial_seed) {
    RunRecord best{};
    bool first = true;
    for (double eta : kSggStepGrid) {
        MeanConfig cfg = base;
        cfg.seed = trial_seed;
        cfg.solver.seed = mix64(trial_seed, 0x5001);
        cfg.step_size = eta;
        const MeanEstimate est = sgg(sample, cfg);
        const double perf = dispersion_of(est);
        if (first || perf < best.performance) {
            best = RunRecord{"SGG", sample_id, perf, est.matchings_solved, trial_seed};
            first = false;
        }
    }
    return best;
}

double select_sgg_step(const Sample& class_sample, const MeanConfig& base, std::uint64_t seed) {
    double best_eta = kSggStepGrid[0];
    double best_avg = kInf;
    for (std::size_t e = 0; e < std::size(kSggStepGrid); ++e) {
        double sum = 0.0;
        for (int t = 0; t < kSggClassTuningTrials; ++t) {
            MeanConfig cfg = base;
            cfg.seed = mix64(seed, e, static_cast<std::uint64_t>(t));
            cfg.solver.seed = mix64(cfg.seed, 0x5001);
            cfg.step_size = kSggStepGrid[e];
            sum += dispersion_of(sgg(class_sample, cfg));
        }
        const double avg = sum / kSggClassTuningTrials;
        if (avg < best_avg) {
            best_avg = avg;
            best_eta = kSggStepGrid[e];
        }
    }
    return best_eta;
}

Sample subsample(const Sample& sample, SplitMix64& rng, std::pair<int, int> size_range) {
    const int n = sample.size();
    int size = rng.uniform_int(size_range.first, size_range.second);
    size = std::clamp(size, 1, n);
    std::vector<int> indices(static_cast<std::size_t>(n));
    std::iota(indices.begin(), indices.end(), 0);
    rng.shuffle(indices);
    Sample out;
    for (int k = 0; k < size; ++k) {
        out.graphs.push_back(sample.graphs[static_cast<std::size_t>(indices[static_cast<std::size_t>(k)])]);
        if (!sample.labels.empty())
            out.labels.push_back(sample.labels[static_cast<std::size_t>(indices[static_cast<std::size_t>(k)])]);
    }
    return out;
}

std::vector<std::string> sorted_classes(const Sample& sample) {
    std::set<std::string> classes(sample.labels.begin(), sample.labels.end());
    return {classes.begin(), classes.end()};
}

Sample class_subsample(const Sample& sample, const std::string& label) {
    Sample out;
    for (int i = 0; i < sample.size(); ++i)
        if (sample.labels[static_cast<std::size_t>(i)] == label)
            out.graphs.push_back(sample.graphs[static_cast<std::size_t>(i)]);
    return out;
}

} // namespace

std::vector<RunRecord> benchmark(std::span<const Dataset> datasets,
                                 std::span<const std::string> algorithms,
                                 const BenchmarkProtocol& protocol, const MeanConfig& cfg) {
    std::vector<RunRecord> records;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        const Dataset& dataset = datasets[d];
        dataset.require_valid();

        if (const auto* random = std::get_if<RandomSamplesProtocol>(&protocol)) {
            for (int s = 0; s < random->count; ++s) {
                SplitMix64 rng(mix64(random->seed, d, static_cast<std::uint64_t>(s)));
                const Sample sample = subsample(dataset.sample, rng, random->size_range);
                const std::string sample_id = dataset.name + "/s" + std::to_string(s);
                for (std::size_t a = 0; a < algorithms.size(); ++a) {
                    const std::uint64_t trial_seed =
                        mix64(mix64(random->seed, d, static_cast<std::uint64_t>(s)), a, 0x7e57);
                    records.push_back(algorithms[a] == "SGG"
                                          ? run_sgg_grid(sample, sample_id, cfg, trial_seed)
                                          : run_one(algorithms[a], sample, sample_id, cfg,
                                                    trial_seed));
                }
            }
            continue;
        }

        const auto& class_protocol = std::get<ClassSamplesProtocol>(protocol);
        if (dataset.sample.labels.empty())
            throw std::invalid_argument("benchmark: class protocol needs labeled datasets");
        const Sample train = dataset.split_sample("train");
        if (train.labels.empty())
            throw std::invalid_argument("benchmark: class protocol needs labeled training data");
        const std::vector<std::string> classes = sorted_classes(train);
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const Sample class_sample = class_subsample(train, classes[c]);
            if (class_sample.graphs.empty()) continue;
            // step size selected once per class, tuning trials excluded from
            // the records
            double sgg_eta = 0.0;
            if (std::find(algorithms.begin(), algorithms.end(), "SGG") != algorithms.end())
                sgg_eta = select_sgg_step(class_sample, cfg, mix64(cfg.seed, d, c));
            for (int r = 0; r < class_protocol.replicates; ++r) {
                const std::string sample_id =
                    dataset.name + "/" + classes[c] + "/r" + std::to_string(r);
                for (std::size_t a = 0; a < algorithms.size(); ++a) {
                    const std::uint64_t trial_seed =
                        mix64(mix64(cfg.seed, d, c), static_cast<std::uint64_t>(r), a);
                    if (algorithms[a] == "SGG") {
                        MeanConfig run_cfg = cfg;
                        run_cfg.step_size = sgg_eta;
                        records.push_back(
                            run_one("SGG", class_sample, sample_id, run_cfg, trial_seed));
                    } else {
                        records.push_back(
                            run_one(algorithms[a], class_sample, sample_id, cfg, trial_seed));
                    }
                }
            }
        }
    }
    return records;
}

std::vector<ConsistencyRow> consistency_simulation(const AttributedGraph& prototype, double noise,
                                                   std::span<const int> n_grid, int trials,
                                                   const MeanConfig& cfg) {
    if (trials < 1) throw std::invalid_argument("consistency_simulation: trials must be >= 1");
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size() / 2;
        return v.size() % 2 == 1 ? v[m] : (v[m - 1] + v[m]) / 2.0;
    };
    std::vector<ConsistencyRow> rows;
    for (int n : n_grid) {
        std::vector<double> dists, norm_vars;
        for (int t = 0; t < trials; ++t) {
            GeneratorSpec spec;
            spec.family = GraphFamily::LetterLike;
            spec.prototype = prototype;
            spec.noise_sigma = noise;
            spec.count = n;
            spec.seed = mix64(cfg.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t));
            const Dataset data = generate(spec);
            MeanConfig run_cfg = cfg;
            run_cfg.seed = mix64(spec.seed, 0xabc);
            const MeanEstimate est = mmm(data.sample, run_cfg);
            dists.push_back(distance(est.mean, prototype, run_cfg.solver));
            norm_vars.push_back(est.best_variation / static_cast<double>(n));
        }
        rows.push_back({n, median(dists), median(norm_vars)});
    }
    return rows;
}

ClassificationReport nn_classify(const Dataset& train, const Dataset& test,
                                 const SolverConfig& cfg) {
    train.require_valid();
    test.require_valid();
    if (train.sample.labels.empty() || test.sample.labels.empty())
        throw std::invalid_argument("nn_classify: train and test need labels");

    std::set<std::string> class_set(train.sample.labels.begin(), train.sample.labels.end());
    class_set.insert(test.sample.labels.begin(), test.sample.labels.end());
    ClassificationReport report;
    report.classes.assign(class_set.begin(), class_set.end());
    const auto class_index = [&](const std::string& label) {
        return static_cast<std::size_t>(
            std::lower_bound(report.classes.begin(), report.classes.end(), label) -
            report.classes.begin());
    };
    report.confusion.assign(report.classes.size(), std::vector<int>(report.classes.size(), 0));

    int correct = 0;
    for (int t = 0; t < test.sample.size(); ++t) {
        const AttributedGraph& g = test.sample.graphs[static_cast<std::size_t>(t)];
        double best_dist = kInf;
        std::size_t best_class = 0;
        bool first = true;
        for (int i = 0; i < train.sample.size(); ++i) {
            const double dist = distance(train.sample.graphs[static_cast<std::size_t>(i)], g, cfg);
            const std::size_t cls = class_index(train.sample.labels[static_cast<std::size_t>(i)]);
            if (first || dist < best_dist || (dist == best_dist && cls < best_class)) {
                best_dist = dist;
                best_class = cls;
                first = false;
            }
        }
        const std::size_t true_class = class_index(test.sample.labels[static_cast<std::size_t>(t)]);
        report.confusion[true_class][best_class] += 1;
        if (true_class == best_class) ++correct;
    }
    report.accuracy = static_cast<double>(correct) / static_cast<double>(test.sample.size());
    return report;
}

std::map<std::string, AttributedGraph> condensed_prototypes(const Dataset& train,
                                                            std::string_view algorithm,
                                                            const MeanConfig& cfg) {
    train.require_valid();
    if (train.sample.labels.empty())
        throw std::invalid_argument("condensed_prototypes: training data needs labels");
    const std::vector<std::string> classes = sorted_classes(train.sample);
    std::map<std::string, AttributedGraph> prototypes;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const Sample class_sample = class_subsample(train.sample, classes[c]);
        MeanConfig class_cfg = cfg;
        class_cfg.seed = mix64(cfg.seed, c);
        class_cfg.solver.seed = mix64(class_cfg.seed, 0x5001);
        prototypes.emplace(classes[c], run_mean(algorithm, class_sample, class_cfg).mean);
    }
    return prototypes;
}

Dataset condensed_dataset(const Dataset& train, std::string_view algorithm,
                          const MeanConfig& cfg) {
    Dataset out;
    out.name = train.name + "-condensed";
    out.provenance = "condensed:" + std::string(algorithm);
    for (auto& [label, mean] : condensed_prototypes(train, algorithm, cfg)) {
        out.sample.graphs.push_back(mean);
        out.sample.labels.push_back(label);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

std::string records_csv(std::span<const RunRecord> records) {
    std::vector<const RunRecord*> sorted;
    sorted.reserve(records.size());
    for (const RunRecord& r : records) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](const RunRecord* a, const RunRecord* b) {
        return std::tie(a->sample_id, a->algorithm) < std::tie(b->sample_id, b->algorithm);
    });
    std::string out = "algorithm,sample_id,performance,matchings,seed\n";
    for (const RunRecord* r : sorted) {
        out += r->algorithm + "," + r->sample_id + "," + format_double(r->performance) + "," +
               std::to_string(r->matchings) + "," + std::to_string(r->seed) + "\n";
    }
    return out;
}

std::string profiles_csv(std::span<const PerformanceProfile> profiles) {
    std::string out = "algorithm,tau,probability\n";
    for (const PerformanceProfile& p : profiles)
        for (const auto& [tau, prob] : p.curve)
            out += p.algorithm + "," + format_double(tau) + "," + format_double(prob) + "\n";
    return out;
}

std::string pairwise_csv(const PairwiseComparison& comparison) {
    std::string out = "algorithm";
    for (const std::string& a : comparison.algorithms) out += "," + a;
    out += ",wins,total_percent\n";
    for (std::size_t i = 0; i < comparison.algorithms.size(); ++i) {
        out += comparison.algorithms[i];
        for (std::size_t j = 0; j < comparison.algorithms.size(); ++j)
            out += "," + format_double(comparison.beats[i][j]);
        out += "," + std::to_string(comparison.wins[i]) + "," +
               format_double(comparison.total_percent[i]) + "\n";
    }
    return out;
}

} // namespace graphmean
