#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphmean/graph.hpp"
#include "graphmean/sample.hpp"

namespace graphmean {

// Labeled graph collection with optional train/validation/test splits.
struct Dataset {
    std::string name;
    Sample sample;
    std::map<std::string, std::vector<int>> splits; // disjoint, in-range index lists
    std::string provenance;

    void require_valid() const;

    // sample restricted to one split (whole sample if the split is absent)
    Sample split_sample(const std::string& split) const;
};

// Mapping from GXL attribute names to attribute-vector dimensions. Numeric
// attributes land directly at their dimension; string attributes one-hot
// encode at dim + index(value); attribute names outside the schema are
// rejected. edge_presence_dim, when set, marks every edge with 1.0 in that
// dimension so unlabeled edges stay distinguishable from non-edges.
struct GxlSchema {
    struct OneHot {
        int dim;
        std::vector<std::string> values;
    };

    int attr_dim = 0;
    std::map<std::string, int> node_attrs;
    std::map<std::string, int> edge_attrs;
    std::map<std::string, OneHot> node_onehot;
    std::map<std::string, OneHot> edge_onehot;
    std::optional<int> edge_presence_dim;

    static GxlSchema from_json(std::string_view json_text);
    std::string to_json() const;
};

// Parses one GXL document: nodes in document order, undirected edges
// symmetrized, attributes mapped through the schema.
AttributedGraph parse_gxl(std::string_view xml_text, const GxlSchema& schema);

// Reads a CXL-style index (<print file="..." class="..."/> entries) and all
// graphs it lists; file paths resolve against `directory`.
Dataset load_dataset(const std::filesystem::path& directory, const std::string& index_file,
                     const GxlSchema& schema);

enum class GraphFamily { LetterLike, RandomUniform };

struct GeneratorSpec {
    GraphFamily family = GraphFamily::LetterLike;
    std::optional<AttributedGraph> prototype; // required for LetterLike
    double noise_sigma = 0.0;                 // attribute perturbation scale
    double structural_noise = 0.0;            // per-pair edge toggle probability
    int count = 1;
    std::uint64_t seed = 0;
    std::pair<int, int> order_range{4, 6}; // RandomUniform
    double density = 0.5;                  // RandomUniform
    int attr_dim = 2;                      // RandomUniform
    std::string label;                     // optional class label for all copies
    std::string name = "synthetic";
};

// Deterministic synthetic data: distorted copies of a prototype
// (LetterLike) or Erdos-Renyi-style graphs with uniform attributes
// (RandomUniform). Byte-identical output for equal specs.
Dataset generate(const GeneratorSpec& spec);

struct NormalizationParams {
    std::vector<double> node_mean, node_std; // per dimension
    std::vector<double> edge_mean, edge_std; // per dimension, true edges only
};

// Z-scores node attributes over all nodes and edge attributes over all true
// edges, per dimension; non-edges stay zero and contribute nothing to the
// statistics. Zero-variance dimensions keep std 1. The returned parameters
// reapply the same transform to held-out data.
std::pair<Dataset, NormalizationParams> normalize_attributes(const Dataset& d);
Dataset apply_normalization(const Dataset& d, const NormalizationParams& params);
Dataset invert_normalization(const Dataset& d, const NormalizationParams& params);

// Canonical JSON with shortest round-trip floats; parse(serialize(x)) is
// bitwise x for finite values. Non-finite attributes are rejected.
std::string native_serialize(const AttributedGraph& g);
std::string native_serialize(const Dataset& d);
AttributedGraph native_parse_graph(std::string_view text);
Dataset native_parse_dataset(std::string_view text);

} // namespace graphmean
