#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "graphmean/errors.hpp"

namespace graphmean {

// Node permutation stored as a bijection on {0, ..., n-1}; mapping()[i] is
// the new position of node i.
class NodePermutation {
public:
    explicit NodePermutation(std::vector<int> mapping);

    static NodePermutation identity(int n);

    int size() const noexcept { return static_cast<int>(mapping_.size()); }
    int operator()(int i) const { return mapping_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& mapping() const noexcept { return mapping_; }

    NodePermutation inverse() const;
    bool is_identity() const noexcept;

    friend bool operator==(const NodePermutation&, const NodePermutation&) = default;

private:
    std::vector<int> mapping_;
};

// Attributed graph as a dense order x order matrix of attribute vectors in
// R^d. Diagonal entries are node attributes, off-diagonal entries are edge
// attributes, and non-edges are exactly the off-diagonal zero vectors. One
// object stores one representative of the graph's equivalence class of
// matrix representations.
//
// All operations on graphs are pure; instances are safe to share across
// threads once built.
class AttributedGraph {
public:
    // zero graph of the given shape
    AttributedGraph(int order, int attr_dim, bool directed = false);

    // Validating constructor from a row-major (i*order + j)*attr_dim buffer.
    // Rejects non-finite entries and, for undirected graphs, any asymmetric
    // off-diagonal pair.
    AttributedGraph(int order, int attr_dim, std::vector<double> values, bool directed);

    int order() const noexcept { return order_; }
    int attr_dim() const noexcept { return dim_; }
    bool directed() const noexcept { return directed_; }

    std::span<const double> attr(int i, int j) const {
        return {values_.data() + offset(i, j), static_cast<std::size_t>(dim_)};
    }

    // Writes an attribute vector; mirrors (j, i) for undirected graphs so the
    // symmetry invariant holds by construction. Finiteness is not re-checked
    // here; parsers and the validating constructor enforce it at the input
    // boundary.
    void set_attr(int i, int j, std::span<const double> value);
    void set_attr(int i, int j, std::initializer_list<double> value);

    const std::vector<double>& values() const noexcept { return values_; }
    double* raw() noexcept { return values_.data(); }
    const double* raw() const noexcept { return values_.data(); }

    bool same_shape(const AttributedGraph& other) const noexcept {
        return order_ == other.order_ && dim_ == other.dim_;
    }

    // bitwise content equality (shape, direction flag, every entry)
    bool identical(const AttributedGraph& other) const noexcept;

private:
    std::size_t offset(int i, int j) const {
        return (static_cast<std::size_t>(i) * static_cast<std::size_t>(order_) +
                static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(dim_);
    }

    int order_;
    int dim_;
    bool directed_;
    std::vector<double> values_;
};

// Expands g with isolated zero-attribute nodes up to order n (n >= g.order()).
AttributedGraph pad(const AttributedGraph& g, int n);

// Returns r with r.attr(p(i), p(j)) = g.attr(i, j); same equivalence class.
AttributedGraph permute(const AttributedGraph& g, const NodePermutation& p);

// Multiplies every node and edge attribute by lambda.
AttributedGraph scale(const AttributedGraph& g, double lambda);

// Matrix inner product of the two given representations.
double inner(const AttributedGraph& a, const AttributedGraph& b);

// Frobenius distance of the two given representations, computed directly as
// the root of the sum of squared entry differences.
double frobenius_distance(const AttributedGraph& a, const AttributedGraph& b);

// Entrywise weighted average of same-shape representations. Weights must be
// nonnegative and sum to 1 within 1e-12; alignment is the caller's job.
AttributedGraph blend(const std::vector<AttributedGraph>& parts,
                      const std::vector<double>& weights);

// Off-diagonal positions whose attribute norm exceeds epsilon. Reporting
// only; the metric itself never consults this. Undirected graphs list each
// edge once (i < j).
std::vector<std::pair<int, int>> edge_set(const AttributedGraph& g, double epsilon = 1e-9);

} // namespace graphmean
