#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "graphmean/frechet.hpp"
#include "graphmean/means.hpp"
#include "test_support.hpp"

using namespace graphmean;
using testsupport::node_graph;
using testsupport::random_graph;
using testsupport::random_sample;

TEST_CASE("frechet value") {
    const SolverConfig cfg;
    SplitMix64 rng(7);

    SUBCASE("single-graph sample at itself") {
        const AttributedGraph g = random_graph(rng, 3, 2);
        Sample s;
        s.graphs = {g};
        const FrechetReport r = frechet_value(g, s, Loss::mean(), cfg);
        CHECK(r.value == 0.0);
        CHECK(r.dispersion == 0.0);
    }
    SUBCASE("scalar pair under squared loss") {
        Sample s;
        s.graphs = {node_graph(0.0), node_graph(2.0)};
        const FrechetReport r = frechet_value(node_graph(1.0), s, Loss::mean(), cfg);
        CHECK(r.value == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(r.per_point == std::vector<double>{1.0, 1.0});
        CHECK(r.normalized_variation == doctest::Approx(1.0));
    }
    SUBCASE("matches hand-summed exact distances") {
        Sample s = random_sample(rng, 4, 4, 2);
        const AttributedGraph z = random_graph(rng, 4, 2);
        const FrechetReport r = frechet_value(z, s, Loss::mean(), cfg);
        double expected = 0.0;
        for (const AttributedGraph& x : s.graphs) {
            const double d = align_exact(x, z).cost;
            expected += d * d;
        }
        CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
        CHECK(r.dispersion * r.dispersion == doctest::Approx(r.variation).epsilon(1e-12));
    }
    SUBCASE("median loss sums plain distances") {
        Sample s;
        s.graphs = {node_graph(0.0), node_graph(3.0)};
        const FrechetReport r = frechet_value(node_graph(1.0), s, Loss::median(), cfg);
        CHECK(r.value == doctest::Approx(3.0).epsilon(1e-15));
    }
    SUBCASE("loss validation") { CHECK_THROWS_AS(Loss::power(0.5), std::invalid_argument); }
    SUBCASE("attribute dimension mismatch") {
        Sample s;
        s.graphs = {node_graph(1.0)};
        CHECK_THROWS_AS(frechet_value(node_graph({1.0, 2.0}), s, Loss::mean(), cfg),
                        std::invalid_argument);
    }
    SUBCASE("value at a sample graph equals its distance-matrix row") {
        Sample s = random_sample(rng, 5, 4, 2);
        const auto matrix = distance_matrix(s, cfg, /*squared=*/true);
        for (int i = 0; i < s.size(); ++i) {
            double row_sum = 0.0;
            for (double v : matrix[static_cast<std::size_t>(i)]) row_sum += v;
            const FrechetReport r =
                frechet_value(s.graphs[static_cast<std::size_t>(i)], s, Loss::mean(), cfg);
            CHECK(r.value == doctest::Approx(row_sum).epsilon(1e-9));
            CHECK(r.value >= 0.0);
        }
    }
}

TEST_CASE("first order residual") {
    const SolverConfig cfg;
    SplitMix64 rng(11);

    SUBCASE("single graph at itself") {
        const AttributedGraph g = random_graph(rng, 3, 2);
        Sample s;
        s.graphs = {g};
        CHECK(first_order_residual(g, s, cfg) == 0.0);
    }
    SUBCASE("scalar midpoint") {
        Sample s;
        s.graphs = {node_graph(0.0), node_graph(2.0)};
        CHECK(first_order_residual(node_graph(1.0), s, cfg) == 0.0);
    }
    SUBCASE("mean algorithm output is a fixed point") {
        Sample s = random_sample(rng, 5, 4, 2);
        MeanConfig mc;
        mc.seed = 3;
        const MeanEstimate est = mmm(s, mc);
        CHECK(first_order_residual(est.mean, s, cfg) <= 1e-8);
    }
    SUBCASE("invariant under permuting the candidate representation") {
        Sample s = random_sample(rng, 4, 4, 2);
        MeanConfig mc;
        mc.seed = 4;
        const AttributedGraph m = mmm(s, mc).mean;
        const NodePermutation p(rng.permutation(m.order()));
        const double a = first_order_residual(m, s, cfg);
        const double b = first_order_residual(permute(m, p), s, cfg);
        CHECK(b == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("midpoint check") {
    const SolverConfig cfg;
    SplitMix64 rng(13);

    SUBCASE("degenerate triple") {
        const AttributedGraph g = random_graph(rng, 3, 1);
        CHECK(midpoint_check(g, g, g, cfg).holds);
    }
    SUBCASE("scalar midpoint") {
        CHECK(midpoint_check(node_graph(0.0), node_graph(2.0), node_graph(1.0), cfg).holds);
        CHECK_FALSE(midpoint_check(node_graph(0.0), node_graph(2.0), node_graph(1.5), cfg).holds);
    }
    SUBCASE("two-graph mean is a midpoint") {
        for (int trial = 0; trial < 5; ++trial) {
            Sample s;
            s.graphs = {random_graph(rng, 4, 2), random_graph(rng, 4, 2)};
            MeanConfig mc;
            mc.seed = static_cast<std::uint64_t>(trial);
            const MeanEstimate est = mmm(s, mc);
            const MidpointReport r =
                midpoint_check(s.graphs[0], s.graphs[1], est.mean, cfg, 1e-8);
            CHECK(r.holds);
        }
    }
}

TEST_CASE("uniqueness cone check") {
    const SolverConfig cfg;

    // solidly asymmetric z
    AttributedGraph z(3, 1);
    z.set_attr(0, 0, {1.0});
    z.set_attr(1, 1, {2.0});
    z.set_attr(2, 2, {4.0});
    z.set_attr(0, 1, {1.0});

    SUBCASE("the center itself is inside") {
        Sample s;
        s.graphs = {z};
        const ConeReport r = uniqueness_cone_check(s, z, cfg);
        CHECK(r.chi > 0.0);
        CHECK(r.holds);
        CHECK(r.distances[0] <= 1e-6);
    }
    SUBCASE("positive multiples lie on the ray") {
        Sample s;
        s.graphs = {scale(z, 0.9), scale(z, 1.1)};
        const ConeReport r = uniqueness_cone_check(s, z, cfg);
        CHECK(r.holds);
        for (double d : r.distances) CHECK(d <= 1e-6);
    }
    SUBCASE("a strongly mismatched graph falls outside") {
        Sample s;
        s.graphs = {scale(z, 1.1), scale(z, -1.0)};
        const ConeReport r = uniqueness_cone_check(s, z, cfg);
        CHECK_FALSE(r.holds);
        CHECK(r.margins[1] < 0.0);
    }
    SUBCASE("zero graph degenerates to a point at norm distance") {
        Sample s;
        s.graphs = {AttributedGraph(3, 1)};
        const ConeReport r = uniqueness_cone_check(s, z, cfg);
        CHECK(r.distances[0] == doctest::Approx(std::sqrt(inner(z, z))).epsilon(1e-12));
        CHECK_FALSE(r.holds);
    }
    SUBCASE("symmetric center collapses to a ray") {
        AttributedGraph sym(2, 1);
        sym.set_attr(0, 0, {1.0});
        sym.set_attr(1, 1, {1.0});
        Sample on_ray;
        on_ray.graphs = {scale(sym, 2.0)};
        const ConeReport ray = uniqueness_cone_check(on_ray, sym, cfg);
        CHECK(ray.chi == 0.0);
        CHECK(ray.holds);

        Sample off_ray;
        AttributedGraph other(2, 1);
        other.set_attr(0, 0, {1.0});
        other.set_attr(1, 1, {3.0});
        off_ray.graphs = {other};
        CHECK_FALSE(uniqueness_cone_check(off_ray, sym, cfg).holds);
    }
}

TEST_CASE("multiple alignment objective") {
    SplitMix64 rng(19);

    SUBCASE("identical representations") {
        const AttributedGraph g = random_graph(rng, 3, 1);
        const std::vector<AttributedGraph> reps{g, g};
        CHECK(multiple_alignment_objective(reps) == 0.0);
    }
    SUBCASE("three scalars") {
        const std::vector<AttributedGraph> reps{node_graph(0.0), node_graph(1.0), node_graph(2.0)};
        CHECK(multiple_alignment_objective(reps) == doctest::Approx(4.0).epsilon(1e-15));
    }
    SUBCASE("too few graphs") {
        const std::vector<AttributedGraph> reps{node_graph(0.0)};
        CHECK_THROWS_AS(multiple_alignment_objective(reps), std::invalid_argument);
    }
    SUBCASE("aligned representations beat shuffled ones in the median") {
        const SolverConfig cfg;
        Sample s = random_sample(rng, 5, 4, 2);
        MeanConfig mc;
        mc.seed = 21;
        const MeanEstimate est = mmm(s, mc);
        const int n = est.mean.order();
        std::vector<AttributedGraph> aligned;
        for (const AttributedGraph& x : s.graphs) {
            const AttributedGraph px = pad(x, n);
            aligned.push_back(permute(px, align(px, est.mean, cfg).perm));
        }
        const double objective = multiple_alignment_objective(aligned);

        std::vector<double> shuffled_objectives;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<AttributedGraph> shuffled;
            for (const AttributedGraph& g : aligned)
                shuffled.push_back(permute(g, NodePermutation(rng.permutation(n))));
            shuffled_objectives.push_back(multiple_alignment_objective(shuffled));
        }
        std::sort(shuffled_objectives.begin(), shuffled_objectives.end());
        CHECK(objective <= shuffled_objectives[shuffled_objectives.size() / 2]);
    }
}

TEST_CASE("majorization: aligned surrogate dominates the Frechet function") {
    const SolverConfig cfg;
    SplitMix64 rng(23);
    Sample s = random_sample(rng, 4, 4, 2);
    MeanConfig mc;
    mc.seed = 5;
    const AttributedGraph m = mmm(s, mc).mean;
    const int n = m.order();

    // representations optimally aligned to the anchor m
    std::vector<AttributedGraph> aligned;
    for (const AttributedGraph& x : s.graphs) {
        const AttributedGraph px = pad(x, n);
        aligned.push_back(permute(px, align(px, m, cfg).perm));
    }
    const auto surrogate = [&](const AttributedGraph& z) {
        double total = 0.0;
        for (const AttributedGraph& rep : aligned) {
            const double d = frobenius_distance(rep, z);
            total += d * d;
        }
        return total;
    };

    // equality at the anchor
    const double fn_at_m = frechet_value(m, s, Loss::mean(), cfg).value;
    CHECK(surrogate(m) == doctest::Approx(fn_at_m).epsilon(1e-9));

    // dominance at random candidates
    for (int trial = 0; trial < 50; ++trial) {
        const AttributedGraph z = random_graph(rng, n, s.attr_dim());
        const double fn = frechet_value(z, s, Loss::mean(), cfg).value;
        CHECK(surrogate(z) >= fn - 1e-9);
    }
}
