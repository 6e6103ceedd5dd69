#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// The oracles enumerate permutations directly and never touch the solver
// code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "graphmean/graph.hpp"
#include "graphmean/rng.hpp"
#include "graphmean/sample.hpp"

namespace testsupport {

using graphmean::AttributedGraph;
using graphmean::NodePermutation;
using graphmean::SplitMix64;

// single node carrying a scalar attribute
inline AttributedGraph node_graph(double value) {
    AttributedGraph g(1, 1);
    g.set_attr(0, 0, {value});
    return g;
}

inline AttributedGraph node_graph(std::initializer_list<double> values) {
    AttributedGraph g(1, static_cast<int>(values.size()));
    g.set_attr(0, 0, values);
    return g;
}

// undirected graph with uniform attributes in [lo, hi]; every pair is an
// edge with probability density
inline AttributedGraph random_graph(SplitMix64& rng, int order, int dim, double density = 0.6,
                                    double lo = -1.0, double hi = 1.0) {
    AttributedGraph g(order, dim);
    std::vector<double> vec(static_cast<std::size_t>(dim));
    for (int i = 0; i < order; ++i) {
        for (double& v : vec) v = rng.uniform(lo, hi);
        g.set_attr(i, i, vec);
    }
    for (int i = 0; i < order; ++i)
        for (int j = i + 1; j < order; ++j) {
            if (rng.uniform01() >= density) continue;
            for (double& v : vec) v = rng.uniform(lo, hi);
            g.set_attr(i, j, vec);
        }
    return g;
}

inline graphmean::Sample random_sample(SplitMix64& rng, int count, int max_order, int dim,
                                       double density = 0.6) {
    graphmean::Sample s;
    for (int i = 0; i < count; ++i)
        s.graphs.push_back(random_graph(rng, rng.uniform_int(2, max_order), dim, density));
    return s;
}

struct OracleAlignment {
    std::vector<int> perm;
    double cost;
};

// exhaustive minimum of ||permute(pad(x)) - pad(y)|| over all permutations;
// ties keep the lexicographically smallest permutation
inline OracleAlignment exhaustive_best_alignment(const AttributedGraph& x,
                                                 const AttributedGraph& y) {
    const int n = std::max(x.order(), y.order());
    const AttributedGraph px = pad(x, n);
    const AttributedGraph py = pad(y, n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    OracleAlignment best{{}, std::numeric_limits<double>::infinity()};
    do {
        const double cost = frobenius_distance(permute(px, NodePermutation(perm)), py);
        if (cost < best.cost) {
            best.cost = cost;
            best.perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// exhaustive maximum of the matrix inner product over permutations
inline double exhaustive_kernel(const AttributedGraph& x, const AttributedGraph& y) {
    const int n = std::max(x.order(), y.order());
    const AttributedGraph px = pad(x, n);
    const AttributedGraph py = pad(y, n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double best = -std::numeric_limits<double>::infinity();
    do {
        best = std::max(best, inner(permute(px, NodePermutation(perm)), py));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct OracleSymmetry {
    bool asymmetric;
    double chi;
};

// full enumeration of non-identity permutations
inline OracleSymmetry exhaustive_symmetry(const AttributedGraph& g) {
    const int n = g.order();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    OracleSymmetry out{true, std::numeric_limits<double>::infinity()};
    do {
        bool identity = true;
        for (int i = 0; i < n; ++i) identity = identity && perm[static_cast<std::size_t>(i)] == i;
        if (identity) continue;
        const double dist = frobenius_distance(permute(g, NodePermutation(perm)), g);
        if (dist == 0.0) {
            return {false, 0.0};
        }
        out.chi = std::min(out.chi, dist);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace testsupport
