#include "graphmean/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "graphmean/rng.hpp"
#include "xml.hpp"

namespace graphmean {

using nlohmann::json;
using detail::XmlNode;

void Dataset::require_valid() const {
    sample.require_valid();
    if (!splits.empty() && sample.labels.empty())
        throw std::invalid_argument("Dataset: splits require labels");
    std::set<int> seen;
    for (const auto& [name_, indices] : splits) {
        for (int i : indices) {
            if (i < 0 || i >= sample.size())
                throw std::invalid_argument("Dataset: split '" + name_ + "' index out of range");
            if (!seen.insert(i).second)
                throw std::invalid_argument("Dataset: split indices overlap");
        }
    }
}

Sample Dataset::split_sample(const std::string& split) const {
    const auto it = splits.find(split);
    if (it == splits.end()) return sample;
    Sample out;
    for (int i : it->second) {
        out.graphs.push_back(sample.graphs[static_cast<std::size_t>(i)]);
        if (!sample.labels.empty()) out.labels.push_back(sample.labels[static_cast<std::size_t>(i)]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// GXL

namespace {

GxlSchema::OneHot onehot_from_json(const json& j) {
    GxlSchema::OneHot oh;
    oh.dim = j.at("dim").get<int>();
    oh.values = j.at("values").get<std::vector<std::string>>();
    return oh;
}

json onehot_to_json(const GxlSchema::OneHot& oh) {
    return json{{"dim", oh.dim}, {"values", oh.values}};
}

// numeric value of a GXL <attr> payload; nullopt for string payloads
struct GxlAttrValue {
    std::optional<double> number;
    std::optional<std::string> text;
};

GxlAttrValue read_attr_value(const XmlNode& attr, const std::string& context) {
    for (const XmlNode& child : attr.children) {
        if (child.name == "float" || child.name == "double" || child.name == "int" ||
            child.name == "Integer") {
            try {
                return {std::stod(child.text), std::nullopt};
            } catch (const std::exception&) {
                throw ParseError("GXL: bad numeric value '" + child.text + "'", context);
            }
        }
        if (child.name == "string") {
            std::string v = child.text;
            // trim surrounding whitespace
            const auto begin = v.find_first_not_of(" \t\r\n");
            const auto end = v.find_last_not_of(" \t\r\n");
            v = begin == std::string::npos ? "" : v.substr(begin, end - begin + 1);
            return {std::nullopt, v};
        }
    }
    throw ParseError("GXL: attr without a float/int/string value", context);
}

void apply_attr(std::vector<double>& vec, const std::string& attr_name, const GxlAttrValue& value,
                const std::map<std::string, int>& numeric,
                const std::map<std::string, GxlSchema::OneHot>& onehot, const std::string& context) {
    if (const auto it = numeric.find(attr_name); it != numeric.end()) {
        if (!value.number)
            throw ParseError("GXL: attribute '" + attr_name + "' must be numeric", context);
        vec[static_cast<std::size_t>(it->second)] = *value.number;
        return;
    }
    if (const auto it = onehot.find(attr_name); it != onehot.end()) {
        if (!value.text)
            throw ParseError("GXL: attribute '" + attr_name + "' must be a string", context);
        const auto& values = it->second.values;
        const auto pos = std::find(values.begin(), values.end(), *value.text);
        if (pos == values.end())
            throw ParseError("GXL: unknown one-hot value '" + *value.text + "' for attribute '" +
                                 attr_name + "'",
                             context);
        vec[static_cast<std::size_t>(it->second.dim + (pos - values.begin()))] = 1.0;
        return;
    }
    throw ParseError("GXL: unknown attribute name '" + attr_name + "'", context);
}

} // namespace

GxlSchema GxlSchema::from_json(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("schema: invalid JSON: ") + e.what());
    }
    GxlSchema schema;
    try {
        schema.attr_dim = j.at("attr_dim").get<int>();
        if (j.contains("node")) schema.node_attrs = j["node"].get<std::map<std::string, int>>();
        if (j.contains("edge")) schema.edge_attrs = j["edge"].get<std::map<std::string, int>>();
        if (j.contains("node_onehot"))
            for (const auto& [k, v] : j["node_onehot"].items())
                schema.node_onehot.emplace(k, onehot_from_json(v));
        if (j.contains("edge_onehot"))
            for (const auto& [k, v] : j["edge_onehot"].items())
                schema.edge_onehot.emplace(k, onehot_from_json(v));
        if (j.contains("edge_presence_dim"))
            schema.edge_presence_dim = j["edge_presence_dim"].get<int>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("schema: ") + e.what());
    }
    if (schema.attr_dim < 1) throw ParseError("schema: attr_dim must be positive");
    return schema;
}

std::string GxlSchema::to_json() const {
    json j;
    j["attr_dim"] = attr_dim;
    j["node"] = node_attrs;
    j["edge"] = edge_attrs;
    json no = json::object();
    for (const auto& [k, v] : node_onehot) no[k] = onehot_to_json(v);
    j["node_onehot"] = no;
    json eo = json::object();
    for (const auto& [k, v] : edge_onehot) eo[k] = onehot_to_json(v);
    j["edge_onehot"] = eo;
    if (edge_presence_dim) j["edge_presence_dim"] = *edge_presence_dim;
    return j.dump();
}

AttributedGraph parse_gxl(std::string_view xml_text, const GxlSchema& schema) {
    const XmlNode root = detail::xml_parse(xml_text);
    const XmlNode* graph = root.name == "graph" ? &root : root.first_child("graph");
    if (graph == nullptr) throw ParseError("GXL: no <graph> element");

    bool directed = false;
    if (const std::string* mode = graph->attribute("edgemode"))
        directed = (*mode == "directed" || *mode == "defaultdirected");

    // nodes in document order
    std::vector<const XmlNode*> nodes;
    std::map<std::string, int> node_index;
    for (const XmlNode& child : graph->children) {
        if (child.name != "node") continue;
        const std::string* id = child.attribute("id");
        if (id == nullptr) throw ParseError("GXL: node without id");
        if (!node_index.emplace(*id, static_cast<int>(nodes.size())).second)
            throw ParseError("GXL: duplicate node id '" + *id + "'");
        nodes.push_back(&child);
    }
    if (nodes.empty()) throw ParseError("GXL: graph has no nodes");

    const int order = static_cast<int>(nodes.size());
    AttributedGraph out(order, schema.attr_dim, directed);

    for (int i = 0; i < order; ++i) {
        std::vector<double> vec(static_cast<std::size_t>(schema.attr_dim), 0.0);
        for (const XmlNode& attr : nodes[static_cast<std::size_t>(i)]->children) {
            if (attr.name != "attr") continue;
            const std::string* name = attr.attribute("name");
            if (name == nullptr) throw ParseError("GXL: attr without name");
            const std::string context = "node " + std::to_string(i);
            apply_attr(vec, *name, read_attr_value(attr, context), schema.node_attrs,
                       schema.node_onehot, context);
        }
        out.set_attr(i, i, vec);
    }

    for (const XmlNode& child : graph->children) {
        if (child.name != "edge") continue;
        const std::string* from = child.attribute("from");
        const std::string* to = child.attribute("to");
        if (from == nullptr || to == nullptr) throw ParseError("GXL: edge without from/to");
        const auto fi = node_index.find(*from);
        const auto ti = node_index.find(*to);
        if (fi == node_index.end())
            throw ParseError("GXL: edge references missing node '" + *from + "'");
        if (ti == node_index.end())
            throw ParseError("GXL: edge references missing node '" + *to + "'");
        if (fi->second == ti->second)
            throw ParseError("GXL: self-loop on node '" + *from + "' not representable");
        std::vector<double> vec(static_cast<std::size_t>(schema.attr_dim), 0.0);
        const std::string context = "edge " + *from + "->" + *to;
        for (const XmlNode& attr : child.children) {
            if (attr.name != "attr") continue;
            const std::string* name = attr.attribute("name");
            if (name == nullptr) throw ParseError("GXL: attr without name");
            apply_attr(vec, *name, read_attr_value(attr, context), schema.edge_attrs,
                       schema.edge_onehot, context);
        }
        if (schema.edge_presence_dim)
            vec[static_cast<std::size_t>(*schema.edge_presence_dim)] = 1.0;
        bool all_zero = true;
        for (double v : vec) all_zero = all_zero && v == 0.0;
        if (all_zero)
            throw ParseError("GXL: edge with zero attribute vector would vanish; set "
                             "edge_presence_dim or map an edge attribute",
                             context);
        out.set_attr(fi->second, ti->second, vec); // undirected mirrors (j, i)
    }

    // validating pass (finiteness, symmetry)
    return AttributedGraph(out.order(), out.attr_dim(), out.values(), out.directed());
}

Dataset load_dataset(const std::filesystem::path& directory, const std::string& index_file,
                     const GxlSchema& schema) {
    const std::filesystem::path index_path = directory / index_file;
    std::ifstream in(index_path);
    if (!in) throw ParseError("cannot open index file", index_path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const XmlNode root = detail::xml_parse(buffer.str());

    std::vector<std::pair<std::string, std::string>> entries; // (file, class)
    // collect <print> elements anywhere below the root
    const std::function<void(const XmlNode&)> collect = [&](const XmlNode& node) {
        if (node.name == "print") {
            const std::string* file = node.attribute("file");
            if (file == nullptr) throw ParseError("CXL: print without file", index_path.string());
            const std::string* label = node.attribute("class");
            entries.emplace_back(*file, label ? *label : "");
        }
        for (const XmlNode& c : node.children) collect(c);
    };
    collect(root);
    if (entries.empty()) throw ParseError("CXL: index lists no graphs", index_path.string());

    const bool some_labeled = std::any_of(entries.begin(), entries.end(),
                                          [](const auto& e) { return !e.second.empty(); });
    const bool all_labeled = std::all_of(entries.begin(), entries.end(),
                                         [](const auto& e) { return !e.second.empty(); });
    if (some_labeled && !all_labeled)
        throw ParseError("CXL: some entries have class labels and some do not",
                         index_path.string());

    Dataset dataset;
    dataset.name = index_path.stem().string();
    dataset.provenance = "gxl:" + index_path.string();
    for (const auto& [file, label] : entries) {
        const std::filesystem::path path = directory / file;
        std::ifstream gin(path);
        if (!gin) throw ParseError("missing graph file", path.string());
        std::stringstream gbuf;
        gbuf << gin.rdbuf();
        try {
            dataset.sample.graphs.push_back(parse_gxl(gbuf.str(), schema));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()), path.string());
        }
        if (all_labeled) dataset.sample.labels.push_back(label);
    }
    dataset.require_valid();
    return dataset;
}

// ---------------------------------------------------------------------------
// generators

namespace {

AttributedGraph distort(const AttributedGraph& prototype, double noise_sigma,
                        double structural_noise, SplitMix64& rng) {
    const int n = prototype.order();
    AttributedGraph g = prototype;
    // every off-diagonal entry once: the upper triangle for undirected
    // graphs (set_attr mirrors), both directions for directed ones
    const auto each_pair = [&](auto&& body) {
        for (int i = 0; i < n; ++i)
            for (int j = g.directed() ? 0 : i + 1; j < n; ++j)
                if (i != j) body(i, j);
    };
    // perturb node attributes and true edge attributes
    for (int i = 0; i < n; ++i) {
        std::vector<double> vec(g.attr(i, i).begin(), g.attr(i, i).end());
        for (double& v : vec) v += rng.gaussian(noise_sigma);
        g.set_attr(i, i, vec);
    }
    each_pair([&](int i, int j) {
        std::vector<double> vec(g.attr(i, j).begin(), g.attr(i, j).end());
        const bool is_edge = std::any_of(vec.begin(), vec.end(), [](double v) { return v != 0.0; });
        if (is_edge) {
            for (double& v : vec) v += rng.gaussian(noise_sigma);
            g.set_attr(i, j, vec);
        }
    });
    // toggle structure
    if (structural_noise > 0.0) {
        each_pair([&](int i, int j) {
            if (rng.uniform01() >= structural_noise) return;
            std::vector<double> vec(g.attr(i, j).begin(), g.attr(i, j).end());
            const bool is_edge =
                std::any_of(vec.begin(), vec.end(), [](double v) { return v != 0.0; });
            if (is_edge) {
                std::fill(vec.begin(), vec.end(), 0.0);
            } else {
                for (double& v : vec) v = rng.gaussian(noise_sigma);
            }
            g.set_attr(i, j, vec);
        });
    }
    return g;
}

AttributedGraph random_uniform_graph(const GeneratorSpec& spec, SplitMix64& rng) {
    const int order = rng.uniform_int(spec.order_range.first, spec.order_range.second);
    AttributedGraph g(order, spec.attr_dim, false);
    std::vector<double> vec(static_cast<std::size_t>(spec.attr_dim));
    for (int i = 0; i < order; ++i) {
        for (double& v : vec) v = rng.uniform01();
        g.set_attr(i, i, vec);
    }
    for (int i = 0; i < order; ++i)
        for (int j = i + 1; j < order; ++j) {
            if (rng.uniform01() >= spec.density) continue;
            for (double& v : vec) v = rng.uniform01();
            g.set_attr(i, j, vec);
        }
    return g;
}

} // namespace

Dataset generate(const GeneratorSpec& spec) {
    if (spec.count < 1) throw std::invalid_argument("generate: count must be >= 1");
    if (spec.noise_sigma < 0.0 || spec.structural_noise < 0.0 || spec.structural_noise > 1.0)
        throw std::invalid_argument("generate: invalid noise parameters");
    Dataset dataset;
    dataset.name = spec.name;
    if (spec.family == GraphFamily::LetterLike) {
        if (!spec.prototype) throw std::invalid_argument("generate: letter-like needs a prototype");
        dataset.provenance = "generated:letter-like";
        for (int c = 0; c < spec.count; ++c) {
            SplitMix64 rng(mix64(spec.seed, static_cast<std::uint64_t>(c)));
            dataset.sample.graphs.push_back(
                distort(*spec.prototype, spec.noise_sigma, spec.structural_noise, rng));
        }
    } else {
        if (spec.attr_dim < 1) throw std::invalid_argument("generate: attr_dim must be positive");
        if (spec.order_range.first < 1 || spec.order_range.second < spec.order_range.first)
            throw std::invalid_argument("generate: bad order range");
        if (spec.density < 0.0 || spec.density > 1.0)
            throw std::invalid_argument("generate: density must be in [0, 1]");
        dataset.provenance = "generated:random-uniform";
        for (int c = 0; c < spec.count; ++c) {
            SplitMix64 rng(mix64(spec.seed, static_cast<std::uint64_t>(c)));
            dataset.sample.graphs.push_back(random_uniform_graph(spec, rng));
        }
    }
    if (!spec.label.empty())
        dataset.sample.labels.assign(static_cast<std::size_t>(spec.count), spec.label);
    return dataset;
}

// ---------------------------------------------------------------------------
// normalization

namespace {

struct DimStats {
    std::vector<double> mean, std_dev;
};

DimStats stats_of(const std::vector<std::vector<double>>& rows, int dim) {
    DimStats s;
    s.mean.assign(static_cast<std::size_t>(dim), 0.0);
    s.std_dev.assign(static_cast<std::size_t>(dim), 1.0);
    if (rows.empty()) return s;
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows)
        for (int k = 0; k < dim; ++k) s.mean[static_cast<std::size_t>(k)] += r[static_cast<std::size_t>(k)];
    for (double& m : s.mean) m /= n;
    for (int k = 0; k < dim; ++k) {
        double var = 0.0;
        for (const auto& r : rows) {
            const double t = r[static_cast<std::size_t>(k)] - s.mean[static_cast<std::size_t>(k)];
            var += t * t;
        }
        var /= n;
        // zero-variance dimensions pass through unscaled
        s.std_dev[static_cast<std::size_t>(k)] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    return s;
}

bool is_nonedge(std::span<const double> attr) {
    for (double v : attr)
        if (v != 0.0) return false;
    return true;
}

enum class Direction { Forward, Inverse };

Dataset transform(const Dataset& d, const NormalizationParams& p, Direction dir) {
    Dataset out = d;
    const int dim = d.sample.attr_dim();
    for (AttributedGraph& g : out.sample.graphs) {
        const int n = g.order();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (g.directed() == false && j < i) continue;
                const bool node = i == j;
                std::span<const double> attr = g.attr(i, j);
                if (!node && is_nonedge(attr)) continue; // non-edges stay zero
                const auto& mean = node ? p.node_mean : p.edge_mean;
                const auto& sd = node ? p.node_std : p.edge_std;
                std::vector<double> vec(attr.begin(), attr.end());
                for (int k = 0; k < dim; ++k) {
                    const std::size_t u = static_cast<std::size_t>(k);
                    vec[u] = dir == Direction::Forward ? (vec[u] - mean[u]) / sd[u]
                                                       : vec[u] * sd[u] + mean[u];
                }
                g.set_attr(i, j, vec);
            }
    }
    return out;
}

} // namespace

std::pair<Dataset, NormalizationParams> normalize_attributes(const Dataset& d) {
    d.sample.require_valid();
    const int dim = d.sample.attr_dim();
    std::vector<std::vector<double>> node_rows, edge_rows;
    for (const AttributedGraph& g : d.sample.graphs) {
        const int n = g.order();
        for (int i = 0; i < n; ++i)
            node_rows.emplace_back(g.attr(i, i).begin(), g.attr(i, i).end());
        for (int i = 0; i < n; ++i)
            for (int j = g.directed() ? 0 : i + 1; j < n; ++j) {
                if (i == j) continue;
                std::span<const double> attr = g.attr(i, j);
                if (!is_nonedge(attr)) edge_rows.emplace_back(attr.begin(), attr.end());
            }
    }
    const DimStats node_stats = stats_of(node_rows, dim);
    const DimStats edge_stats = stats_of(edge_rows, dim);
    NormalizationParams params{node_stats.mean, node_stats.std_dev, edge_stats.mean,
                               edge_stats.std_dev};
    return {transform(d, params, Direction::Forward), params};
}

Dataset apply_normalization(const Dataset& d, const NormalizationParams& params) {
    return transform(d, params, Direction::Forward);
}

Dataset invert_normalization(const Dataset& d, const NormalizationParams& params) {
    return transform(d, params, Direction::Inverse);
}

// ---------------------------------------------------------------------------
// native format

namespace {

json graph_to_json(const AttributedGraph& g) {
    for (double v : g.values())
        if (!std::isfinite(v))
            throw std::invalid_argument("native_serialize: non-finite attribute");
    json attrs = json::array();
    for (int i = 0; i < g.order(); ++i) {
        json row = json::array();
        for (int j = 0; j < g.order(); ++j) {
            const std::span<const double> a = g.attr(i, j);
            row.push_back(json(std::vector<double>(a.begin(), a.end())));
        }
        attrs.push_back(std::move(row));
    }
    return json{{"order", g.order()},
                {"attr_dim", g.attr_dim()},
                {"directed", g.directed()},
                {"attrs", std::move(attrs)}};
}

AttributedGraph graph_from_json(const json& j) {
    int order = 0, dim = 0;
    bool directed = false;
    json attrs;
    try {
        order = j.at("order").get<int>();
        dim = j.at("attr_dim").get<int>();
        directed = j.at("directed").get<bool>();
        attrs = j.at("attrs");
    } catch (const json::exception& e) {
        throw ParseError(std::string("native graph: ") + e.what());
    }
    if (order < 1 || dim < 1) throw ParseError("native graph: bad shape");
    if (!attrs.is_array() || static_cast<int>(attrs.size()) != order)
        throw ParseError("native graph: attrs must be an order x order array");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(order) * order * dim);
    for (int i = 0; i < order; ++i) {
        const json& row = attrs[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != order)
            throw ParseError("native graph: attrs must be an order x order array");
        for (int jx = 0; jx < order; ++jx) {
            const json& cell = row[static_cast<std::size_t>(jx)];
            if (!cell.is_array() || static_cast<int>(cell.size()) != dim)
                throw ParseError("native graph: attribute vector has wrong length");
            for (const json& v : cell) {
                if (!v.is_number()) throw ParseError("native graph: attribute is not a number");
                values.push_back(v.get<double>());
            }
        }
    }
    try {
        return AttributedGraph(order, dim, std::move(values), directed);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("native graph: ") + e.what());
    }
}

} // namespace

std::string native_serialize(const AttributedGraph& g) { return graph_to_json(g).dump() + "\n"; }

std::string native_serialize(const Dataset& d) {
    d.require_valid();
    json j;
    j["name"] = d.name;
    j["provenance"] = d.provenance;
    json graphs = json::array();
    for (const AttributedGraph& g : d.sample.graphs) graphs.push_back(graph_to_json(g));
    j["graphs"] = std::move(graphs);
    if (!d.sample.labels.empty()) j["labels"] = d.sample.labels;
    if (!d.splits.empty()) j["splits"] = d.splits;
    return j.dump() + "\n";
}

AttributedGraph native_parse_graph(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("native graph: invalid JSON: ") + e.what());
    }
    return graph_from_json(j);
}

Dataset native_parse_dataset(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("native dataset: invalid JSON: ") + e.what());
    }
    Dataset d;
    try {
        d.name = j.value("name", "");
        d.provenance = j.value("provenance", "");
        if (!j.contains("graphs") || !j["graphs"].is_array() || j["graphs"].empty())
            throw ParseError("native dataset: missing graphs");
        for (const json& g : j["graphs"]) d.sample.graphs.push_back(graph_from_json(g));
        if (j.contains("labels")) d.sample.labels = j["labels"].get<std::vector<std::string>>();
        if (j.contains("splits"))
            d.splits = j["splits"].get<std::map<std::string, std::vector<int>>>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("native dataset: ") + e.what());
    }
    try {
        d.require_valid();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("native dataset: ") + e.what());
    }
    return d;
}

} // namespace graphmean
