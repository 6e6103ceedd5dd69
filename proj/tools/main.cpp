// graphmean: sample means of attributed graphs under the graph edit kernel
// metric, plus the benchmarking and classification harness around them.
//
// Every command echoes its fully resolved configuration to
// <output-dir>/config.json so runs can be reproduced from the artifacts
// alone. Exit codes: 0 success, 1 usage error, 2 data error, 3 size-cap
// error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphmean/data.hpp"
#include "graphmean/eval.hpp"
#include "graphmean/frechet.hpp"
#include "graphmean/means.hpp"
#include "graphmean/rng.hpp"
#include "graphmean/symmetry.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace graphmean;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    int exact_threshold = 8;
    int restarts = 16;
    int local_search_sweeps = 100;
    std::string output_dir;
};

std::string default_output_dir() {
    if (const char* env = std::getenv("GRAPHMEAN_OUTPUT_DIR")) return env;
    return ".";
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file", path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

GxlSchema load_schema(const std::string& schema_path) {
    if (schema_path.empty())
        throw std::invalid_argument("--schema is required for GXL input");
    return GxlSchema::from_json(read_file(schema_path));
}

// dataset from either a native JSON file or a CXL index
Dataset load_input_dataset(const std::string& input, const std::string& format,
                           const std::string& schema_path) {
    if (format == "gxl") {
        const fs::path index(input);
        return load_dataset(index.parent_path().empty() ? "." : index.parent_path(),
                            index.filename().string(), load_schema(schema_path));
    }
    const std::string text = read_file(input);
    // a bare graph file becomes a one-graph dataset
    const json probe = [&] {
        try {
            return json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), input);
        }
    }();
    Dataset d;
    if (probe.contains("graphs")) {
        d = native_parse_dataset(text);
    } else {
        d.name = fs::path(input).stem().string();
        d.provenance = "native:" + input;
        d.sample.graphs.push_back(native_parse_graph(text));
    }
    return d;
}

SolverConfig solver_from(const GlobalOptions& global) {
    SolverConfig solver;
    solver.exact_threshold = global.exact_threshold;
    solver.restarts = global.restarts;
    solver.local_search_sweeps = global.local_search_sweeps;
    solver.seed = mix64(global.seed, 0x5001);
    return solver;
}

json solver_json(const SolverConfig& solver) {
    return json{{"exact_threshold", solver.exact_threshold},
                {"restarts", solver.restarts},
                {"local_search_sweeps", solver.local_search_sweeps},
                {"seed", solver.seed}};
}

void echo_config(const GlobalOptions& global, const std::string& command, json options) {
    options["command"] = command;
    options["seed"] = global.seed;
    options["solver"] = solver_json(solver_from(global));
    options["output_dir"] = global.output_dir;
    write_file(fs::path(global.output_dir) / "config.json", options.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct MeanOptions {
    std::string algorithm = "MMM";
    std::string input;
    std::string format = "native";
    std::string schema;
    int waiting_time = 10;
    int max_iterations = 500;
    double improvement_tol = 1e-9;
    double step_size = 0.0;
    std::string schedule = "constant";
    std::string order_policy = "shuffled";
    std::string init_policy = "random";
    std::string init_graph;
};

MeanConfig mean_config_from(const GlobalOptions& global, const MeanOptions& opt) {
    MeanConfig cfg;
    cfg.solver = solver_from(global);
    cfg.seed = global.seed;
    cfg.waiting_time = opt.waiting_time;
    cfg.max_iterations = opt.max_iterations;
    cfg.improvement_tol = opt.improvement_tol;
    cfg.step_size = opt.step_size;
    cfg.step_schedule =
        opt.schedule == "inverse-k" ? StepSchedule::InverseK : StepSchedule::Constant;
    if (opt.order_policy == "as-given")
        cfg.order_policy = OrderPolicy::AsGiven;
    else if (opt.order_policy == "increasing-from-reference")
        cfg.order_policy = OrderPolicy::IncreasingFromReference;
    else
        cfg.order_policy = OrderPolicy::Shuffled;
    if (opt.init_policy == "medoid") {
        cfg.init_policy = InitPolicy::Medoid;
    } else if (opt.init_policy == "given") {
        cfg.init_policy = InitPolicy::Given;
        if (opt.init_graph.empty())
            throw std::invalid_argument("--init-graph is required with --init-policy given");
        cfg.init_graph = native_parse_graph(read_file(opt.init_graph));
    } else {
        cfg.init_policy = InitPolicy::RandomSampleGraph;
    }
    return cfg;
}

int cmd_mean(const GlobalOptions& global, const MeanOptions& opt) {
    const Dataset dataset = load_input_dataset(opt.input, opt.format, opt.schema);
    const MeanConfig cfg = mean_config_from(global, opt);
    const MeanEstimate est = run_mean(opt.algorithm, dataset.sample, cfg);

    echo_config(global, "mean",
                json{{"algorithm", opt.algorithm},
                     {"input", opt.input},
                     {"format", opt.format},
                     {"waiting_time", opt.waiting_time},
                     {"max_iterations", opt.max_iterations},
                     {"improvement_tol", opt.improvement_tol},
                     {"step_size", opt.step_size},
                     {"schedule", opt.schedule},
                     {"order_policy", opt.order_policy},
                     {"init_policy", opt.init_policy}});

    const fs::path out(global.output_dir);
    write_file(out / "mean.json", native_serialize(est.mean));
    json report{{"algorithm", est.algorithm},
                {"best_variation", est.best_variation},
                {"dispersion", std::sqrt(est.best_variation)},
                {"iterations", est.iterations},
                {"iterations_until_best", est.iterations_until_best},
                {"matchings_solved", est.matchings_solved},
                {"matchings_until_best", est.matchings_until_best},
                {"evaluation_matchings", est.evaluation_matchings},
                {"variation_trace", est.variation_trace},
                {"sample_size", dataset.sample.size()},
                {"mean_order", est.mean.order()},
                {"attr_dim", est.mean.attr_dim()}};
    write_file(out / "mean_report.json", report.dump(2) + "\n");

    std::cout << est.algorithm << ": dispersion " << std::sqrt(est.best_variation) << " after "
              << est.iterations << " iteration(s), " << est.matchings_solved
              << " matchings; outputs in " << out.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct BenchOptions {
    std::string protocol = "random";
    std::vector<std::string> datasets;
    std::vector<std::string> algorithms = mean_algorithm_names();
    std::string format = "native";
    std::string schema;
    int samples = 20;
    int size_min = 3;
    int size_max = 10;
    int replicates = 1;
    int waiting_time = 10;
    int max_iterations = 500;
};

int cmd_bench(const GlobalOptions& global, const BenchOptions& opt) {
    std::vector<Dataset> datasets;
    for (const std::string& path : opt.datasets)
        datasets.push_back(load_input_dataset(path, opt.format, opt.schema));

    MeanConfig cfg;
    cfg.solver = solver_from(global);
    cfg.seed = global.seed;
    cfg.waiting_time = opt.waiting_time;
    cfg.max_iterations = opt.max_iterations;

    BenchmarkProtocol protocol;
    if (opt.protocol == "random")
        protocol = RandomSamplesProtocol{opt.samples, {opt.size_min, opt.size_max}, global.seed};
    else if (opt.protocol == "class")
        protocol = ClassSamplesProtocol{opt.replicates};
    else
        throw std::invalid_argument("unknown protocol '" + opt.protocol + "'");

    const std::vector<RunRecord> records = benchmark(datasets, opt.algorithms, protocol, cfg);
    const auto profiles = performance_profile(records);
    const auto pairwise = pairwise_comparison(records);

    echo_config(global, "bench",
                json{{"protocol", opt.protocol},
                     {"datasets", opt.datasets},
                     {"algorithms", opt.algorithms},
                     {"samples", opt.samples},
                     {"size_min", opt.size_min},
                     {"size_max", opt.size_max},
                     {"replicates", opt.replicates},
                     {"waiting_time", opt.waiting_time},
                     {"max_iterations", opt.max_iterations}});

    const fs::path out(global.output_dir);
    write_file(out / "records.csv", records_csv(records));
    write_file(out / "profiles.csv", profiles_csv(profiles));
    write_file(out / "pairwise.csv", pairwise_csv(pairwise));

    std::cout << records.size() << " runs over " << datasets.size() << " dataset(s); wins:";
    for (const PerformanceProfile& p : profiles)
        std::cout << " " << p.algorithm << "=" << p.wins;
    std::cout << "\nCSV outputs in " << out.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct ClassifyOptions {
    std::string train;
    std::string test;
    std::string condense = "none";
    std::string format = "native";
    std::string schema;
};

int cmd_classify(const GlobalOptions& global, const ClassifyOptions& opt) {
    const Dataset train = load_input_dataset(opt.train, opt.format, opt.schema);
    const Dataset test = load_input_dataset(opt.test, opt.format, opt.schema);

    MeanConfig cfg;
    cfg.solver = solver_from(global);
    cfg.seed = global.seed;

    ClassificationReport report;
    if (opt.condense == "none") {
        report = nn_classify(train, test, cfg.solver);
    } else {
        report = nn_classify(condensed_dataset(train, opt.condense, cfg), test, cfg.solver);
    }

    echo_config(global, "classify",
                json{{"train", opt.train}, {"test", opt.test}, {"condense", opt.condense}});

    json out{{"accuracy", report.accuracy},
             {"classes", report.classes},
             {"confusion", report.confusion},
             {"condense", opt.condense},
             {"train_size", train.sample.size()},
             {"test_size", test.sample.size()}};
    write_file(fs::path(global.output_dir) / "classify_report.json", out.dump(2) + "\n");

    std::cout << "accuracy " << report.accuracy << " (" << opt.condense << " condensing, "
              << test.sample.size() << " test graphs)\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct GenOptions {
    std::string family = "letter";
    std::string prototype;
    int count = 0;
    double noise_sigma = 0.0;
    double structural_noise = 0.0;
    int order_min = 4;
    int order_max = 6;
    double density = 0.5;
    int attr_dim = 2;
    std::string label;
    std::string name = "synthetic";
    std::string output = "dataset.json";
};

int cmd_gen(const GlobalOptions& global, const GenOptions& opt) {
    GeneratorSpec spec;
    spec.noise_sigma = opt.noise_sigma;
    spec.structural_noise = opt.structural_noise;
    spec.count = opt.count;
    spec.seed = global.seed;
    spec.order_range = {opt.order_min, opt.order_max};
    spec.density = opt.density;
    spec.attr_dim = opt.attr_dim;
    spec.label = opt.label;
    spec.name = opt.name;
    if (opt.family == "letter") {
        spec.family = GraphFamily::LetterLike;
        if (opt.prototype.empty()) {
            // no prototype given: draw one random-uniform prototype from the seed
            GeneratorSpec proto_spec;
            proto_spec.family = GraphFamily::RandomUniform;
            proto_spec.count = 1;
            proto_spec.seed = mix64(global.seed, 0x9707);
            proto_spec.order_range = spec.order_range;
            proto_spec.density = spec.density;
            proto_spec.attr_dim = spec.attr_dim;
            spec.prototype = generate(proto_spec).sample.graphs.front();
        } else {
            spec.prototype = native_parse_graph(read_file(opt.prototype));
        }
    } else if (opt.family == "uniform") {
        spec.family = GraphFamily::RandomUniform;
    } else {
        throw std::invalid_argument("unknown family '" + opt.family + "'");
    }

    const Dataset dataset = generate(spec);

    echo_config(global, "gen",
                json{{"family", opt.family},
                     {"prototype", opt.prototype},
                     {"count", opt.count},
                     {"noise_sigma", opt.noise_sigma},
                     {"structural_noise", opt.structural_noise},
                     {"order_min", opt.order_min},
                     {"order_max", opt.order_max},
                     {"density", opt.density},
                     {"attr_dim", opt.attr_dim},
                     {"label", opt.label},
                     {"name", opt.name},
                     {"output", opt.output}});

    write_file(fs::path(global.output_dir) / opt.output, native_serialize(dataset));
    std::cout << "wrote " << dataset.sample.size() << " graph(s) to "
              << (fs::path(global.output_dir) / opt.output).string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct InspectOptions {
    std::string input;
    std::string format = "native";
    std::string schema;
    double epsilon = 1e-9;
    int symmetry_cap = 10;
    bool require_symmetry = false; // fail with the size-cap exit code instead
                                   // of silently skipping large graphs
};

json inspect_graph(const AttributedGraph& g, const InspectOptions& opt) {
    json j{{"order", g.order()},
           {"attr_dim", g.attr_dim()},
           {"directed", g.directed()},
           {"edge_count", edge_set(g, opt.epsilon).size()},
           {"epsilon", opt.epsilon}};
    if (g.order() <= opt.symmetry_cap || opt.require_symmetry) {
        const SymmetryReport r = degree_of_asymmetry(g, opt.symmetry_cap);
        j["symmetry"] = json{{"asymmetric", r.asymmetric},
                             {"chi", std::isfinite(r.chi) ? json(r.chi) : json("inf")},
                             {"permutations_examined", r.permutations_examined}};
    }
    return j;
}

int cmd_inspect(const GlobalOptions& global, const InspectOptions& opt) {
    const Dataset dataset = load_input_dataset(opt.input, opt.format, opt.schema);

    json report;
    if (dataset.sample.size() == 1) {
        report = inspect_graph(dataset.sample.graphs.front(), opt);
        std::cout << "graph: order " << report["order"] << ", attr_dim " << report["attr_dim"]
                  << ", " << report["edge_count"] << " edge(s)";
        if (report.contains("symmetry"))
            std::cout << ", chi " << report["symmetry"]["chi"];
        std::cout << "\n";
    } else {
        MeanConfig cfg;
        cfg.solver = solver_from(global);
        cfg.seed = global.seed;
        const MeanEstimate medoid = med(dataset.sample, cfg);
        report["size"] = dataset.sample.size();
        report["attr_dim"] = dataset.sample.attr_dim();
        report["max_order"] = dataset.sample.max_order();
        report["medoid_dispersion"] = std::sqrt(medoid.best_variation);
        if (!dataset.sample.labels.empty()) {
            std::set<std::string> classes(dataset.sample.labels.begin(),
                                          dataset.sample.labels.end());
            report["classes"] = std::vector<std::string>(classes.begin(), classes.end());
        }
        json graphs = json::array();
        for (const AttributedGraph& g : dataset.sample.graphs) graphs.push_back(inspect_graph(g, opt));
        report["graphs"] = std::move(graphs);
        std::cout << "dataset: " << dataset.sample.size() << " graph(s), medoid dispersion "
                  << report["medoid_dispersion"] << "\n";
    }

    echo_config(global, "inspect",
                json{{"input", opt.input},
                     {"epsilon", opt.epsilon},
                     {"symmetry_cap", opt.symmetry_cap}});
    write_file(fs::path(global.output_dir) / "inspect_report.json", report.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sample means of attributed graphs in graph edit kernel space"};
    app.require_subcommand(1);

    GlobalOptions global;
    global.output_dir = default_output_dir();
    app.add_option("--seed", global.seed, "master seed for all randomness");
    app.add_option("--solver-exact-threshold", global.exact_threshold,
                   "max padded order solved exactly");
    app.add_option("--restarts", global.restarts, "heuristic solver multistarts");
    app.add_option("--local-search-sweeps", global.local_search_sweeps,
                   "2-opt sweeps per restart");
    app.add_option("--output-dir", global.output_dir,
                   "output directory (default $GRAPHMEAN_OUTPUT_DIR or .)");

    MeanOptions mean_opt;
    CLI::App* mean_cmd = app.add_subcommand("mean", "compute a sample mean of a graph dataset");
    mean_cmd->add_option("--algorithm", mean_opt.algorithm,
                         "MMM, SGG, BAM, IAM, GNJ, PAC or MED");
    mean_cmd->add_option("--input", mean_opt.input, "dataset file")->required();
    mean_cmd->add_option("--format", mean_opt.format, "native or gxl");
    mean_cmd->add_option("--schema", mean_opt.schema, "GXL attribute schema (JSON)");
    mean_cmd->add_option("--waiting-time", mean_opt.waiting_time);
    mean_cmd->add_option("--max-iterations", mean_opt.max_iterations);
    mean_cmd->add_option("--improvement-tol", mean_opt.improvement_tol);
    mean_cmd->add_option("--step-size", mean_opt.step_size, "SGG constant step");
    mean_cmd->add_option("--schedule", mean_opt.schedule, "constant or inverse-k");
    mean_cmd->add_option("--order-policy", mean_opt.order_policy,
                         "as-given, shuffled or increasing-from-reference");
    mean_cmd->add_option("--init-policy", mean_opt.init_policy, "random, medoid or given");
    mean_cmd->add_option("--init-graph", mean_opt.init_graph, "native graph for --init-policy given");

    BenchOptions bench_opt;
    CLI::App* bench_cmd = app.add_subcommand("bench", "compare mean algorithms over samples");
    bench_cmd->add_option("--protocol", bench_opt.protocol, "random or class");
    bench_cmd->add_option("--datasets", bench_opt.datasets, "dataset files")->required();
    bench_cmd->add_option("--algorithms", bench_opt.algorithms, "subset of the seven algorithms");
    bench_cmd->add_option("--samples", bench_opt.samples, "random protocol: samples per dataset");
    bench_cmd->add_option("--size-min", bench_opt.size_min);
    bench_cmd->add_option("--size-max", bench_opt.size_max);
    bench_cmd->add_option("--replicates", bench_opt.replicates, "class protocol replicates");
    bench_cmd->add_option("--waiting-time", bench_opt.waiting_time);
    bench_cmd->add_option("--max-iterations", bench_opt.max_iterations);
    bench_cmd->add_option("--format", bench_opt.format, "native or gxl");
    bench_cmd->add_option("--schema", bench_opt.schema, "GXL attribute schema (JSON)");

    ClassifyOptions classify_opt;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "1-NN classification, optionally condensed");
    classify_cmd->add_option("--train", classify_opt.train)->required();
    classify_cmd->add_option("--test", classify_opt.test)->required();
    classify_cmd->add_option("--condense", classify_opt.condense,
                             "none or a mean algorithm name");
    classify_cmd->add_option("--format", classify_opt.format, "native or gxl");
    classify_cmd->add_option("--schema", classify_opt.schema, "GXL attribute schema (JSON)");

    GenOptions gen_opt;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset");
    gen_cmd->add_option("--family", gen_opt.family, "letter or uniform");
    gen_cmd->add_option("--prototype", gen_opt.prototype, "native graph file (letter family)");
    gen_cmd->add_option("--count", gen_opt.count, "number of graphs")->required();
    gen_cmd->add_option("--noise-sigma", gen_opt.noise_sigma);
    gen_cmd->add_option("--structural-noise", gen_opt.structural_noise);
    gen_cmd->add_option("--order-min", gen_opt.order_min);
    gen_cmd->add_option("--order-max", gen_opt.order_max);
    gen_cmd->add_option("--density", gen_opt.density);
    gen_cmd->add_option("--attr-dim", gen_opt.attr_dim);
    gen_cmd->add_option("--label", gen_opt.label, "class label for all copies");
    gen_cmd->add_option("--name", gen_opt.name);
    gen_cmd->add_option("--output", gen_opt.output, "output file name inside --output-dir");

    InspectOptions inspect_opt;
    CLI::App* inspect_cmd = app.add_subcommand("inspect", "describe a graph or dataset");
    inspect_cmd->add_option("--input", inspect_opt.input)->required();
    inspect_cmd->add_option("--format", inspect_opt.format, "native or gxl");
    inspect_cmd->add_option("--schema", inspect_opt.schema, "GXL attribute schema (JSON)");
    inspect_cmd->add_option("--epsilon", inspect_opt.epsilon, "edge reporting threshold");
    inspect_cmd->add_option("--symmetry-cap", inspect_opt.symmetry_cap);
    inspect_cmd->add_flag("--require-symmetry", inspect_opt.require_symmetry,
                          "fail instead of skipping the symmetry report on large graphs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (mean_cmd->parsed()) return cmd_mean(global, mean_opt);
        if (bench_cmd->parsed()) return cmd_bench(global, bench_opt);
        if (classify_cmd->parsed()) return cmd_classify(global, classify_opt);
        if (gen_cmd->parsed()) return cmd_gen(global, gen_opt);
        if (inspect_cmd->parsed()) return cmd_inspect(global, inspect_opt);
    } catch (const SizeCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
