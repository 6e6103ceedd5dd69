#pragma once

#include <vector>

namespace graphmean {

struct AssignmentResult {
    std::vector<int> assignment; // row i -> column assignment[i]
    double cost;
};

// Exact square linear assignment in O(n^3) (Kuhn-Munkres with potentials).
// cost is row-major n*n. Deterministic for equal-cost optima.
AssignmentResult solve_assignment(const std::vector<double>& cost, int n);

} // namespace graphmean
