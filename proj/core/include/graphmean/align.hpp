#pragma once

#include <cstdint>
#include <vector>

#include "graphmean/graph.hpp"
#include "graphmean/sample.hpp"

namespace graphmean {

// Two-tier matcher policy: exact branch-and-bound up to exact_threshold
// padded nodes, LAP-seeded 2-opt multistart above it.
struct SolverConfig {
    int exact_threshold = 8;
    int restarts = 16;
    int local_search_sweeps = 100;
    std::uint64_t seed = 0;
};

// Permutation applied to the first graph's padded representation, plus the
// achieved Frobenius cost. cost always equals
// frobenius_distance(permute(pad(x, n), perm), pad(y, n)) exactly.
struct Alignment {
    NodePermutation perm;
    double cost;
    bool exact;
};

// Pads both graphs to n = max(order) and minimizes the Frobenius distance
// over permutations of the first: exactly for n <= cfg.exact_threshold,
// heuristically otherwise. Deterministic given cfg.seed.
Alignment align(const AttributedGraph& x, const AttributedGraph& y,
                const SolverConfig& cfg = {});

// Globally optimal alignment by branch-and-bound over partial node
// assignments; admissible bound is the sum of per-row minimum assignment
// costs over unassigned rows. Among optima whose accumulated costs compare
// exactly equal, the lexicographically smallest permutation wins, keeping
// downstream algorithms deterministic.
Alignment align_exact(const AttributedGraph& x, const AttributedGraph& y,
                      int safety_cap = 10);

// Multistart heuristic: LAP seed on node-attribute plus sorted incident-edge
// profile costs, then pairwise-transposition local search. Upper bound on
// the true metric.
Alignment align_heuristic(const AttributedGraph& x, const AttributedGraph& y,
                          const SolverConfig& cfg = {});

// Graph edit kernel: max matrix inner product over alignments, recovered
// from the achieved alignment cost.
double kernel(const AttributedGraph& x, const AttributedGraph& y,
              const SolverConfig& cfg = {});

// Graph edit kernel metric, realized as the achieved alignment cost.
double distance(const AttributedGraph& x, const AttributedGraph& y,
                const SolverConfig& cfg = {});

// Pairwise distances (or squared distances). Each unordered pair is solved
// once with an independent seed mix64(cfg.seed, i, j), so results do not
// depend on evaluation order.
std::vector<std::vector<double>> distance_matrix(const Sample& sample,
                                                 const SolverConfig& cfg = {},
                                                 bool squared = false);

} // namespace graphmean
