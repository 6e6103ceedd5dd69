#pragma once

#include <cstdint>
#include <optional>

#include "graphmean/graph.hpp"

namespace graphmean {

struct SymmetryReport {
    bool asymmetric;
    double chi; // degree of asymmetry; 0 exactly for symmetric graphs
    std::optional<NodePermutation> witness; // minimizing non-identity permutation
    long long permutations_examined;
};

// True iff no non-identity permutation fixes the attribute matrix.
// Enumeration prunes candidates by node-attribute equality first. Entries
// compare bitwise when tolerance == 0, else by attribute-vector norm.
bool is_asymmetric(const AttributedGraph& g, int cap = 10, double tolerance = 0.0);

// Degree of asymmetry: the shortest Frobenius distance between two distinct
// matrix representations, 0 for symmetric graphs.
SymmetryReport degree_of_asymmetry(const AttributedGraph& g, int cap = 10,
                                   double tolerance = 0.0);

} // namespace graphmean
