#include "graphmean/frechet.hpp"

#include <algorithm>
#include <cmath>

#include "graphmean/detail/compensated_sum.hpp"
#include "graphmean/symmetry.hpp"

namespace graphmean {

using detail::CompensatedSum;

double Loss::operator()(double a) const {
    if (p_ == 2.0) return a * a;
    if (p_ == 1.0) return a;
    return std::pow(a, p_);
}

FrechetReport frechet_value(const AttributedGraph& z, const Sample& s, const Loss& loss,
                            const SolverConfig& cfg) {
    s.require_valid();
    if (z.attr_dim() != s.attr_dim())
        throw std::invalid_argument("frechet_value: attribute dimension mismatch");
    FrechetReport report{};
    report.per_point.reserve(s.graphs.size());
    CompensatedSum sum;
    for (const AttributedGraph& x : s.graphs) {
        const double d = distance(x, z, cfg);
        report.per_point.push_back(d);
        sum.add(loss(d));
    }
    report.value = sum.value();
    report.variation = report.value;
    report.dispersion = std::sqrt(report.variation);
    report.normalized_variation = report.variation / static_cast<double>(s.size());
    return report;
}

double first_order_residual(const AttributedGraph& m, const Sample& s, const SolverConfig& cfg) {
    s.require_valid();
    if (m.attr_dim() != s.attr_dim())
        throw std::invalid_argument("first_order_residual: attribute dimension mismatch");
    const int n = std::max(m.order(), s.max_order());
    const AttributedGraph pm = pad(m, n);
    std::vector<AttributedGraph> aligned;
    aligned.reserve(s.graphs.size());
    for (const AttributedGraph& x : s.graphs) {
        const AttributedGraph px = pad(x, n);
        const Alignment a = align(px, pm, cfg);
        aligned.push_back(permute(px, a.perm));
    }
    const std::vector<double> weights(aligned.size(), 1.0 / static_cast<double>(aligned.size()));
    return frobenius_distance(pm, blend(aligned, weights));
}

MidpointReport midpoint_check(const AttributedGraph& x, const AttributedGraph& y,
                              const AttributedGraph& m, const SolverConfig& cfg, double tol) {
    MidpointReport report{};
    report.d_xy = distance(x, y, cfg);
    report.d_xm = distance(x, m, cfg);
    report.d_ym = distance(y, m, cfg);
    const double half = report.d_xy / 2.0;
    report.holds = std::abs(report.d_xm - half) <= tol && std::abs(report.d_ym - half) <= tol;
    return report;
}

ConeReport uniqueness_cone_check(const Sample& s, const AttributedGraph& z,
                                 const SolverConfig& cfg, int symmetry_cap) {
    s.require_valid();
    if (z.attr_dim() != s.attr_dim())
        throw std::invalid_argument("uniqueness_cone_check: attribute dimension mismatch");
    ConeReport report{};
    report.chi = degree_of_asymmetry(z, symmetry_cap).chi;
    const double kzz = inner(z, z); // self-kernel: the identity is optimal
    report.holds = true;
    for (const AttributedGraph& x : s.graphs) {
        const double kxx = inner(x, x);
        double dist;
        if (kxx == 0.0) {
            dist = std::sqrt(kzz); // zero graph: ray degenerates to a point
        } else {
            const double kxz = std::max(kernel(x, z, cfg), 0.0);
            dist = std::sqrt(std::max(0.0, kzz - kxz * kxz / kxx));
        }
        report.distances.push_back(dist);
        report.margins.push_back(report.chi / 2.0 - dist);
        if (!(dist <= report.chi / 2.0)) report.holds = false;
    }
    return report;
}

double multiple_alignment_objective(std::span<const AttributedGraph> reps) {
    if (reps.size() < 2)
        throw std::invalid_argument("multiple_alignment_objective: need at least two graphs");
    for (const AttributedGraph& g : reps)
        if (!g.same_shape(reps.front()))
            throw std::invalid_argument("multiple_alignment_objective: shape mismatch");
    CompensatedSum sum;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            sum.add(frobenius_distance(reps[i], reps[j]));
    return sum.value();
}

} // namespace graphmean
