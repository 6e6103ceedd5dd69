#include "graphmean/symmetry.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

namespace graphmean {

namespace {

void require_cap(const AttributedGraph& g, int cap) {
    if (cap < 1) throw std::invalid_argument("symmetry: cap must be positive");
    if (g.order() > cap)
        throw SizeCapError("symmetry: order " + std::to_string(g.order()) +
                           " exceeds enumeration cap " + std::to_string(cap));
}

// attribute-vector equality, bitwise by default
inline bool attrs_equal(const AttributedGraph& g, int i1, int j1, int i2, int j2, double tol) {
    const std::span<const double> a = g.attr(i1, j1);
    const std::span<const double> b = g.attr(i2, j2);
    if (tol == 0.0)
        return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a[k] - b[k];
        sq += t * t;
    }
    return std::sqrt(sq) <= tol;
}

// Searches for any non-identity automorphism, assigning node i to phi(i) in
// lexicographic order and rejecting partial maps that already disagree.
class AutomorphismSearch {
public:
    AutomorphismSearch(const AttributedGraph& g, double tol)
        : g_(g), tol_(tol), n_(g.order()), phi_(static_cast<std::size_t>(g.order()), -1),
          used_(static_cast<std::size_t>(g.order()), 0) {}

    bool find_nontrivial() {
        found_ = false;
        descend(0, true);
        return found_;
    }

    long long leaves_examined() const { return leaves_; }

private:
    void descend(int depth, bool identity_so_far) {
        if (found_) return;
        if (depth == n_) {
            ++leaves_;
            if (!identity_so_far) found_ = true;
            return;
        }
        for (int q = 0; q < n_ && !found_; ++q) {
            if (used_[static_cast<std::size_t>(q)]) continue;
            if (!attrs_equal(g_, depth, depth, q, q, tol_)) continue;
            bool ok = true;
            for (int j = 0; j < depth && ok; ++j) {
                const int pj = phi_[static_cast<std::size_t>(j)];
                ok = attrs_equal(g_, depth, j, q, pj, tol_) &&
                     attrs_equal(g_, j, depth, pj, q, tol_);
            }
            if (!ok) continue;
            phi_[static_cast<std::size_t>(depth)] = q;
            used_[static_cast<std::size_t>(q)] = 1;
            descend(depth + 1, identity_so_far && q == depth);
            used_[static_cast<std::size_t>(q)] = 0;
        }
        phi_[static_cast<std::size_t>(depth)] = -1;
    }

    const AttributedGraph& g_;
    double tol_;
    int n_;
    std::vector<int> phi_;
    std::vector<char> used_;
    bool found_ = false;
    long long leaves_ = 0;
};

// Minimizes ||g^phi - g|| over non-identity permutations of an asymmetric
// graph. Distinct representations only, so every leaf has positive cost;
// partial-cost pruning keeps the first (lexicographically smallest) optimum.
class ChiSearch {
public:
    ChiSearch(const AttributedGraph& g, double tol)
        : g_(g), tol_(tol), n_(g.order()), d_(g.attr_dim()),
          phi_(static_cast<std::size_t>(g.order()), -1),
          used_(static_cast<std::size_t>(g.order()), 0) {}

    void run() {
        best_sq_ = std::numeric_limits<double>::infinity();
        descend(0, 0.0, true);
    }

    double best_sq() const { return best_sq_; }
    const std::vector<int>& best() const { return best_; }
    long long leaves_examined() const { return leaves_; }

private:
    double pair_sq(int i1, int j1, int i2, int j2) const {
        const double* a = g_.raw() + (static_cast<std::size_t>(i1) * n_ + j1) * d_;
        const double* b = g_.raw() + (static_cast<std::size_t>(i2) * n_ + j2) * d_;
        double s = 0.0;
        for (int k = 0; k < d_; ++k) {
            const double t = a[k] - b[k];
            s += t * t;
        }
        return s;
    }

    void descend(int depth, double partial_sq, bool identity_so_far) {
        if (depth == n_) {
            ++leaves_;
            if (identity_so_far) return; // the graph's own representation
            if (tol_ > 0.0 && fixes_within_tolerance()) return;
            if (partial_sq < best_sq_) {
                best_sq_ = partial_sq;
                best_ = phi_;
            }
            return;
        }
        for (int q = 0; q < n_; ++q) {
            if (used_[static_cast<std::size_t>(q)]) continue;
            // cost of the new row/column block against the prefix
            double sq = partial_sq + pair_sq(depth, depth, q, q);
            for (int j = 0; j < depth && sq < best_sq_; ++j) {
                const int pj = phi_[static_cast<std::size_t>(j)];
                sq += pair_sq(depth, j, q, pj);
                sq += pair_sq(j, depth, pj, q);
            }
            if (sq >= best_sq_) continue;
            phi_[static_cast<std::size_t>(depth)] = q;
            used_[static_cast<std::size_t>(q)] = 1;
            descend(depth + 1, sq, identity_so_far && q == depth);
            used_[static_cast<std::size_t>(q)] = 0;
        }
        phi_[static_cast<std::size_t>(depth)] = -1;
    }

    // tolerance mode: a permutation whose image agrees with g entrywise
    // within tol counts as fixing and is excluded from the minimum
    bool fixes_within_tolerance() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (!attrs_equal(g_, i, j, phi_[static_cast<std::size_t>(i)],
                                 phi_[static_cast<std::size_t>(j)], tol_))
                    return false;
        return true;
    }

    const AttributedGraph& g_;
    double tol_;
    int n_;
    int d_;
    std::vector<int> phi_;
    std::vector<char> used_;
    std::vector<int> best_;
    double best_sq_ = std::numeric_limits<double>::infinity();
    long long leaves_ = 0;
};

} // namespace

bool is_asymmetric(const AttributedGraph& g, int cap, double tolerance) {
    require_cap(g, cap);
    if (g.order() == 1) return true;
    AutomorphismSearch search(g, tolerance);
    return !search.find_nontrivial();
}

SymmetryReport degree_of_asymmetry(const AttributedGraph& g, int cap, double tolerance) {
    require_cap(g, cap);
    SymmetryReport report{};
    if (g.order() == 1) {
        // a single node has exactly one representation: trivially asymmetric,
        // and the minimum over distinct representations is empty
        report.asymmetric = true;
        report.chi = std::numeric_limits<double>::infinity();
        report.permutations_examined = 1;
        return report;
    }

    AutomorphismSearch aut(g, tolerance);
    if (aut.find_nontrivial()) {
        report.asymmetric = false;
        report.chi = 0.0;
        report.permutations_examined = aut.leaves_examined();
        return report;
    }

    ChiSearch chi(g, tolerance);
    chi.run();
    report.asymmetric = true;
    report.chi = std::sqrt(chi.best_sq());
    report.witness = NodePermutation(chi.best());
    report.permutations_examined = aut.leaves_examined() + chi.leaves_examined();
    return report;
}

} // namespace graphmean
