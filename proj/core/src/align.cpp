#include "graphmean/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphmean/lap.hpp"
#include "graphmean/rng.hpp"

namespace graphmean {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// squared distance between entries (xi, xj) of x and (yi, yj) of y
inline double entry_sq(const double* x, const double* y, int n, int d, int xi, int xj, int yi,
                       int yj) {
    const double* a = x + (static_cast<std::size_t>(xi) * n + xj) * d;
    const double* b = y + (static_cast<std::size_t>(yi) * n + yj) * d;
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
        const double t = a[k] - b[k];
        s += t * t;
    }
    return s;
}

// Branch-and-bound over partial assignments of x-nodes to y-slots in
// lexicographic order. Keeping the first incumbent on ties yields the
// lexicographically smallest optimal permutation.
class BranchAndBound {
public:
    BranchAndBound(const double* x, const double* y, int n, int d)
        : x_(x), y_(y), n_(n), d_(d), perm_(static_cast<std::size_t>(n), -1),
          used_(static_cast<std::size_t>(n), 0) {}

    std::vector<int> solve() {
        best_sq_ = kInf;
        descend(0, 0.0);
        return best_;
    }

private:
    // cost added by assigning x-node k to y-slot q against the fixed prefix
    double assign_cost(int k, int q) const {
        double s = entry_sq(x_, y_, n_, d_, k, k, q, q);
        for (int j = 0; j < k; ++j) {
            const int pj = perm_[static_cast<std::size_t>(j)];
            s += entry_sq(x_, y_, n_, d_, k, j, q, pj);
            s += entry_sq(x_, y_, n_, d_, j, k, pj, q);
        }
        return s;
    }

    // admissible bound: per-row minimum assignment cost over unassigned rows,
    // ignoring interactions among unassigned pairs (each such term is >= 0)
    double remaining_bound(int depth) const {
        double total = 0.0;
        for (int i = depth; i < n_; ++i) {
            double row_min = kInf;
            for (int q = 0; q < n_; ++q) {
                if (used_[static_cast<std::size_t>(q)]) continue;
                double c = entry_sq(x_, y_, n_, d_, i, i, q, q);
                for (int j = 0; j < depth && c < row_min; ++j) {
                    const int pj = perm_[static_cast<std::size_t>(j)];
                    c += entry_sq(x_, y_, n_, d_, i, j, q, pj);
                    c += entry_sq(x_, y_, n_, d_, j, i, pj, q);
                }
                row_min = std::min(row_min, c);
            }
            total += row_min;
        }
        return total;
    }

    void descend(int depth, double partial_sq) {
        if (depth == n_) {
            if (partial_sq < best_sq_) {
                best_sq_ = partial_sq;
                best_ = perm_;
            }
            return;
        }
        for (int q = 0; q < n_; ++q) {
            if (used_[static_cast<std::size_t>(q)]) continue;
            const double sq = partial_sq + assign_cost(depth, q);
            if (sq >= best_sq_) continue;
            perm_[static_cast<std::size_t>(depth)] = q;
            used_[static_cast<std::size_t>(q)] = 1;
            if (depth + 1 == n_ || sq + remaining_bound(depth + 1) < best_sq_)
                descend(depth + 1, sq);
            used_[static_cast<std::size_t>(q)] = 0;
        }
        perm_[static_cast<std::size_t>(depth)] = -1;
    }

    const double* x_;
    const double* y_;
    int n_;
    int d_;
    std::vector<int> perm_;
    std::vector<char> used_;
    std::vector<int> best_;
    double best_sq_ = kInf;
};

double total_sq(const double* x, const double* y, int n, int d, const std::vector<int>& perm) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s += entry_sq(x, y, n, d, i, j, perm[static_cast<std::size_t>(i)],
                          perm[static_cast<std::size_t>(j)]);
    return s;
}

// cost restricted to entries whose row or column touches a or b
double local_sq(const double* x, const double* y, int n, int d, const std::vector<int>& perm,
                int a, int b) {
    double s = 0.0;
    const int pa = perm[static_cast<std::size_t>(a)];
    const int pb = perm[static_cast<std::size_t>(b)];
    for (int j = 0; j < n; ++j) {
        const int pj = perm[static_cast<std::size_t>(j)];
        s += entry_sq(x, y, n, d, a, j, pa, pj);
        s += entry_sq(x, y, n, d, b, j, pb, pj);
        if (j == a || j == b) continue;
        s += entry_sq(x, y, n, d, j, a, pj, pa);
        s += entry_sq(x, y, n, d, j, b, pj, pb);
    }
    return s;
}

// sorted norms of incident edge attributes, a permutation-invariant node
// signature used for LAP seeding
std::vector<double> edge_profile(const AttributedGraph& g, int node) {
    const int n = g.order();
    std::vector<double> profile;
    profile.reserve(static_cast<std::size_t>(g.directed() ? 2 * (n - 1) : n - 1));
    auto norm_of = [&](int i, int j) {
        double sq = 0.0;
        for (double v : g.attr(i, j)) sq += v * v;
        return std::sqrt(sq);
    };
    for (int j = 0; j < n; ++j)
        if (j != node) profile.push_back(norm_of(node, j));
    std::sort(profile.begin(), profile.end(), std::greater<>());
    if (g.directed()) {
        std::vector<double> in;
        for (int j = 0; j < n; ++j)
            if (j != node) in.push_back(norm_of(j, node));
        std::sort(in.begin(), in.end(), std::greater<>());
        profile.insert(profile.end(), in.begin(), in.end());
    }
    return profile;
}

Alignment finish(const AttributedGraph& px, const AttributedGraph& py, std::vector<int> perm,
                 bool exact) {
    NodePermutation p(std::move(perm));
    const double cost = frobenius_distance(permute(px, p), py);
    return Alignment{std::move(p), cost, exact};
}

void require_same_dim(const AttributedGraph& x, const AttributedGraph& y) {
    if (x.attr_dim() != y.attr_dim())
        throw std::invalid_argument("align: attribute dimensions differ");
}

} // namespace

Alignment align_exact(const AttributedGraph& x, const AttributedGraph& y, int safety_cap) {
    require_same_dim(x, y);
    const int n = std::max(x.order(), y.order());
    if (n > safety_cap)
        throw SizeCapError("align_exact: padded order " + std::to_string(n) +
                           " exceeds safety cap " + std::to_string(safety_cap));
    const AttributedGraph px = pad(x, n);
    const AttributedGraph py = pad(y, n);
    BranchAndBound solver(px.raw(), py.raw(), n, px.attr_dim());
    return finish(px, py, solver.solve(), true);
}

Alignment align_heuristic(const AttributedGraph& x, const AttributedGraph& y,
                          const SolverConfig& cfg) {
    require_same_dim(x, y);
    const int n = std::max(x.order(), y.order());
    const int d = x.attr_dim();
    const AttributedGraph px = pad(x, n);
    const AttributedGraph py = pad(y, n);
    if (n <= 1) return finish(px, py, {0}, true);

    // base LAP costs: node attribute distance plus sorted incident-edge
    // profile distance
    std::vector<std::vector<double>> prof_x(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> prof_y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        prof_x[static_cast<std::size_t>(i)] = edge_profile(px, i);
        prof_y[static_cast<std::size_t>(i)] = edge_profile(py, i);
    }
    std::vector<double> base(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < n; ++q) {
            double node_sq = entry_sq(px.raw(), py.raw(), n, d, i, i, q, q);
            double prof_sq = 0.0;
            const auto& pi = prof_x[static_cast<std::size_t>(i)];
            const auto& pq = prof_y[static_cast<std::size_t>(q)];
            for (std::size_t k = 0; k < pi.size(); ++k) {
                const double t = pi[k] - pq[k];
                prof_sq += t * t;
            }
            base[static_cast<std::size_t>(i) * n + q] = std::sqrt(node_sq) + std::sqrt(prof_sq);
        }

    const int restarts = std::max(1, cfg.restarts);
    std::vector<int> best_perm;
    double best_sq = kInf;
    std::vector<double> jittered(base.size());
    for (int r = 0; r < restarts; ++r) {
        std::vector<int> perm;
        if (r == 0) {
            perm = solve_assignment(base, n).assignment;
        } else {
            // multiplicative jitter keeps costs nonnegative and the whole
            // restart scale-equivariant
            SplitMix64 rng(mix64(cfg.seed, static_cast<std::uint64_t>(r)));
            for (std::size_t k = 0; k < base.size(); ++k)
                jittered[k] = base[k] * (1.0 + 0.5 * rng.uniform01());
            perm = solve_assignment(jittered, n).assignment;
        }

        double cur_sq = total_sq(px.raw(), py.raw(), n, d, perm);
        for (int sweep = 0; sweep < cfg.local_search_sweeps; ++sweep) {
            bool improved = false;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    const double before = local_sq(px.raw(), py.raw(), n, d, perm, a, b);
                    std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
                    const double after = local_sq(px.raw(), py.raw(), n, d, perm, a, b);
                    if (after < before - 1e-12 * (1.0 + cur_sq)) {
                        cur_sq += after - before;
                        improved = true;
                    } else {
                        std::swap(perm[static_cast<std::size_t>(a)],
                                  perm[static_cast<std::size_t>(b)]);
                    }
                }
            if (!improved) break;
        }

        cur_sq = total_sq(px.raw(), py.raw(), n, d, perm);
        if (cur_sq < best_sq || (cur_sq == best_sq && perm < best_perm)) {
            best_sq = cur_sq;
            best_perm = std::move(perm);
        }
    }
    return finish(px, py, std::move(best_perm), false);
}

Alignment align(const AttributedGraph& x, const AttributedGraph& y, const SolverConfig& cfg) {
    require_same_dim(x, y);
    const int n = std::max(x.order(), y.order());
    if (n <= cfg.exact_threshold) return align_exact(x, y, n);
    return align_heuristic(x, y, cfg);
}

double kernel(const AttributedGraph& x, const AttributedGraph& y, const SolverConfig& cfg) {
    const Alignment a = align(x, y, cfg);
    return (inner(x, x) + inner(y, y) - a.cost * a.cost) / 2.0;
}

double distance(const AttributedGraph& x, const AttributedGraph& y, const SolverConfig& cfg) {
    return align(x, y, cfg).cost;
}

std::vector<std::vector<double>> distance_matrix(const Sample& sample, const SolverConfig& cfg,
                                                 bool squared) {
    sample.require_valid();
    const int n = sample.size();
    std::vector<std::vector<double>> matrix(static_cast<std::size_t>(n),
                                            std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            SolverConfig pair_cfg = cfg;
            pair_cfg.seed = mix64(cfg.seed, static_cast<std::uint64_t>(i),
                                  static_cast<std::uint64_t>(j));
            const double dist = distance(sample.graphs[static_cast<std::size_t>(i)],
                                         sample.graphs[static_cast<std::size_t>(j)], pair_cfg);
            const double value = squared ? dist * dist : dist;
            matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = value;
            matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = value;
        }
    return matrix;
}

} // namespace graphmean
