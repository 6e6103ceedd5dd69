#include "graphmean/graph.hpp"

#include <cmath>
#include <cstring>
#include <algorithm>

namespace graphmean {

NodePermutation::NodePermutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
    const int n = static_cast<int>(mapping_.size());
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : mapping_) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("NodePermutation: mapping is not a bijection");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

NodePermutation NodePermutation::identity(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
    return NodePermutation(std::move(m));
}

NodePermutation NodePermutation::inverse() const {
    std::vector<int> inv(mapping_.size());
    for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(mapping_[static_cast<std::size_t>(i)])] = i;
    return NodePermutation(std::move(inv));
}

bool NodePermutation::is_identity() const noexcept {
    for (int i = 0; i < size(); ++i)
        if (mapping_[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

AttributedGraph::AttributedGraph(int order, int attr_dim, bool directed)
    : order_(order), dim_(attr_dim), directed_(directed),
      values_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order) *
                  static_cast<std::size_t>(attr_dim),
              0.0) {
    if (order < 1) throw std::invalid_argument("AttributedGraph: order must be positive");
    if (attr_dim < 1) throw std::invalid_argument("AttributedGraph: attr_dim must be positive");
}

AttributedGraph::AttributedGraph(int order, int attr_dim, std::vector<double> values, bool directed)
    : order_(order), dim_(attr_dim), directed_(directed), values_(std::move(values)) {
    if (order < 1) throw std::invalid_argument("AttributedGraph: order must be positive");
    if (attr_dim < 1) throw std::invalid_argument("AttributedGraph: attr_dim must be positive");
    const std::size_t expected = static_cast<std::size_t>(order) *
                                 static_cast<std::size_t>(order) *
                                 static_cast<std::size_t>(attr_dim);
    if (values_.size() != expected)
        throw std::invalid_argument("AttributedGraph: value buffer has wrong size");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("AttributedGraph: attributes must be finite");
    if (!directed_) {
        for (int i = 0; i < order_; ++i)
            for (int j = i + 1; j < order_; ++j)
                if (std::memcmp(values_.data() + offset(i, j), values_.data() + offset(j, i),
                                sizeof(double) * static_cast<std::size_t>(dim_)) != 0)
                    throw std::invalid_argument(
                        "AttributedGraph: undirected graph has asymmetric attribute matrix");
    }
}

void AttributedGraph::set_attr(int i, int j, std::span<const double> value) {
    if (i < 0 || i >= order_ || j < 0 || j >= order_)
        throw std::invalid_argument("AttributedGraph::set_attr: index out of range");
    if (static_cast<int>(value.size()) != dim_)
        throw std::invalid_argument("AttributedGraph::set_attr: wrong attribute dimension");
    std::copy(value.begin(), value.end(), values_.begin() + static_cast<std::ptrdiff_t>(offset(i, j)));
    if (!directed_ && i != j)
        std::copy(value.begin(), value.end(), values_.begin() + static_cast<std::ptrdiff_t>(offset(j, i)));
}

void AttributedGraph::set_attr(int i, int j, std::initializer_list<double> value) {
    set_attr(i, j, std::span<const double>(value.begin(), value.size()));
}

bool AttributedGraph::identical(const AttributedGraph& other) const noexcept {
    return order_ == other.order_ && dim_ == other.dim_ && directed_ == other.directed_ &&
           std::memcmp(values_.data(), other.values_.data(), values_.size() * sizeof(double)) == 0;
}

AttributedGraph pad(const AttributedGraph& g, int n) {
    if (n < g.order()) throw std::invalid_argument("pad: target order below graph order");
    if (n == g.order()) return g;
    AttributedGraph out(n, g.attr_dim(), g.directed());
    const int m = g.order();
    const int d = g.attr_dim();
    for (int i = 0; i < m; ++i) {
        // rows are contiguous, copy each original row in one shot
        const double* src = g.raw() + (static_cast<std::size_t>(i) * m) * d;
        double* dst = out.raw() + (static_cast<std::size_t>(i) * n) * d;
        std::memcpy(dst, src, static_cast<std::size_t>(m) * d * sizeof(double));
    }
    return out;
}

AttributedGraph permute(const AttributedGraph& g, const NodePermutation& p) {
    if (p.size() != g.order())
        throw std::invalid_argument("permute: permutation size does not match graph order");
    const int n = g.order();
    const int d = g.attr_dim();
    AttributedGraph out(n, d, g.directed());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double* src = g.raw() + (static_cast<std::size_t>(i) * n + j) * d;
            double* dst = out.raw() + (static_cast<std::size_t>(p(i)) * n + p(j)) * d;
            std::memcpy(dst, src, static_cast<std::size_t>(d) * sizeof(double));
        }
    return out;
}

AttributedGraph scale(const AttributedGraph& g, double lambda) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("scale: lambda must be finite");
    AttributedGraph out = g;
    for (double* v = out.raw(); v != out.raw() + out.values().size(); ++v) *v *= lambda;
    return out;
}

double inner(const AttributedGraph& a, const AttributedGraph& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("inner: shape mismatch");
    const double* x = a.raw();
    const double* y = b.raw();
    double sum = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) sum += x[k] * y[k];
    return sum;
}

double frobenius_distance(const AttributedGraph& a, const AttributedGraph& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("frobenius_distance: shape mismatch");
    const double* x = a.raw();
    const double* y = b.raw();
    double sum = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) {
        const double t = x[k] - y[k];
        sum += t * t;
    }
    return std::sqrt(sum);
}

AttributedGraph blend(const std::vector<AttributedGraph>& parts,
                      const std::vector<double>& weights) {
    if (parts.empty()) throw std::invalid_argument("blend: empty part list");
    if (parts.size() != weights.size())
        throw std::invalid_argument("blend: parts and weights differ in length");
    double wsum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("blend: weights must be nonnegative");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("blend: weights must sum to 1");
    const AttributedGraph& first = parts.front();
    for (const AttributedGraph& g : parts)
        if (!g.same_shape(first)) throw std::invalid_argument("blend: shape mismatch");
    AttributedGraph out(first.order(), first.attr_dim(), first.directed());
    double* acc = out.raw();
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const double w = weights[k];
        const double* src = parts[k].raw();
        for (std::size_t t = 0; t < out.values().size(); ++t) acc[t] += w * src[t];
    }
    return out;
}

std::vector<std::pair<int, int>> edge_set(const AttributedGraph& g, double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("edge_set: epsilon must be nonnegative");
    std::vector<std::pair<int, int>> edges;
    const int n = g.order();
    for (int i = 0; i < n; ++i) {
        const int j0 = g.directed() ? 0 : i + 1;
        for (int j = j0; j < n; ++j) {
            if (i == j) continue;
            double sq = 0.0;
            for (double v : g.attr(i, j)) sq += v * v;
            if (std::sqrt(sq) > epsilon) edges.emplace_back(i, j);
        }
    }
    return edges;
}

} // namespace graphmean
