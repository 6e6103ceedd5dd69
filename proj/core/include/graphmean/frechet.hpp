#pragma once

#include <span>
#include <vector>

#include "graphmean/align.hpp"
#include "graphmean/graph.hpp"
#include "graphmean/sample.hpp"

namespace graphmean {

// Loss applied to distances inside the Frechet function. power(1) is the
// median loss, power(2) the mean loss.
class Loss {
public:
    static Loss mean() { return Loss(2.0); }
    static Loss median() { return Loss(1.0); }
    static Loss power(double p) {
        if (!(p >= 1.0)) throw std::invalid_argument("Loss: exponent must be >= 1");
        return Loss(p);
    }

    double exponent() const noexcept { return p_; }
    double operator()(double a) const;

private:
    explicit Loss(double p) : p_(p) {}
    double p_;
};

// Evaluation of the sample Frechet function at one candidate. For a raw
// evaluation, variation equals value (the minimum "found" is the single
// evaluation itself); mean algorithms fill variation with their best value.
struct FrechetReport {
    double value;                  // F_n at the candidate
    double variation;              // V_n, the minimum found
    double dispersion;             // sqrt(variation)
    double normalized_variation;   // variation / n
    std::vector<double> per_point; // distance from each sample graph
};

FrechetReport frechet_value(const AttributedGraph& z, const Sample& s, const Loss& loss,
                            const SolverConfig& cfg = {});

// Distance between m and the equal-weight average of the sample
// representations optimally aligned to m. Zero at every local minimum of the
// squared-loss Frechet function. The default tolerances used by callers
// (1e-8) assume the exact solver regime; heuristic distances are upper
// bounds only, so widen to about 1e-4 there.
double first_order_residual(const AttributedGraph& m, const Sample& s,
                            const SolverConfig& cfg = {});

struct MidpointReport {
    bool holds;
    double d_xy;
    double d_xm;
    double d_ym;
};

// Checks |d(x,m) - d(x,y)/2| <= tol and |d(y,m) - d(x,y)/2| <= tol. The 1e-8
// default suits the exact solver regime; widen to about 1e-4 when the
// distances come from the heuristic tier.
MidpointReport midpoint_check(const AttributedGraph& x, const AttributedGraph& y,
                              const AttributedGraph& m, const SolverConfig& cfg = {},
                              double tol = 1e-8);

struct ConeReport {
    double chi;
    std::vector<double> distances; // closest approach of each sample ray to z
    std::vector<double> margins;   // chi/2 - distance
    bool holds;
};

// Sufficient uniqueness test: the sample lies in the cone circumscribing the
// ball of radius chi(z)/2 around z iff every sample ray passes within chi/2
// of z. Ray-to-point distances use the closed form
//   sqrt(max(0, k(z,z) - max(k(x,z), 0)^2 / k(x,x)))
// obtained by minimizing d(lambda*x, z) over lambda >= 0; a zero graph's ray
// degenerates to the point 0 at distance sqrt(k(z,z)).
ConeReport uniqueness_cone_check(const Sample& s, const AttributedGraph& z,
                                 const SolverConfig& cfg = {}, int symmetry_cap = 10);

// Sum of pairwise Frobenius distances of concrete aligned representations.
// Evaluation only; minimizing it (the multiple alignment problem) is out of
// scope.
double multiple_alignment_objective(std::span<const AttributedGraph> reps);

} // namespace graphmean
