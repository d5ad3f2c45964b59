#include <random>

#include <gtest/gtest.h>

#include "dimers/kasteleyn.hpp"
#include "test_graphs.hpp"

using namespace dimers;

namespace {

RationalPoly uniform_symbol() {
    RationalPoly p;
    p.add({0, 0}, 4);
    for (IVec2 e : {IVec2{1, 0}, IVec2{-1, 0}, IVec2{0, 1}, IVec2{0, -1}}) p.add(e, -1);
    return p;
}

}  // namespace

TEST(Kasteleyn, DefaultOrientationSatisfiesOddRule) {
    std::vector<PeriodicGraph> graphs = {uniform_grid(), drifted_grid(1, 2, 3, 4), testing_graphs::honeycomb()};
    for (unsigned s = 0; s < 8; ++s) graphs.push_back(testing_graphs::random_spec(s));
    for (const auto& g : graphs)
        for (int n : {1, 2, 3}) {
            auto dg = build_double(build_quotient(g, n));
            EXPECT_TRUE(odd_rule_violations(dg, orient(dg)).empty()) << g.name << " n=" << n;
        }
    auto dg = build_double(build_wired(drifted_grid(1, 2, 3, 4), 4));
    EXPECT_TRUE(odd_rule_violations(dg, orient(dg)).empty());
}

TEST(Kasteleyn, FlippingPrimalEdgesKeepsOddRule) {
    std::mt19937 rng(3);
    auto dg = build_double(build_quotient(testing_graphs::honeycomb(), 2));
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<char> flip(dg.num_white);
        for (auto& f : flip) f = char(rng() % 2);
        EXPECT_TRUE(odd_rule_violations(dg, orient(dg, flip)).empty());
    }
    EXPECT_THROW(orient(dg, std::vector<char>(1)), Error);
}

TEST(Kasteleyn, UniformN1SymbolUpToGauge) {
    auto t = torus_setup(uniform_grid(), 1);
    auto p = char_poly(t.dg, t.orientation, t.markers);
    auto g = align_gauge(p, uniform_symbol());
    ASSERT_TRUE(g) << pretty(p);
    EXPECT_EQ(p(Rational(1), Rational(1)), 0);
    EXPECT_EQ(pretty(normalize_sign(p)), pretty(normalize_sign(uniform_symbol().shifted(g->shift))));
}

TEST(Kasteleyn, DriftedN1Symbol) {
    auto t = torus_setup(drifted_grid(1, 2, 3, 4), 1);
    auto p = char_poly(t.dg, t.orientation, t.markers);
    // a and c ride on one variable, b and d on the other.
    EXPECT_EQ(abs(p.coeff({0, 0})), 10);
    auto np = newton_polygon(p);
    EXPECT_EQ(np.vertices.size(), 4u);
    EXPECT_EQ(np.interior.size(), 1u);
    Rational total = 0;
    for (const auto& [e, c] : p.terms) total += abs(c);
    EXPECT_EQ(total, 20);
}

TEST(Kasteleyn, FloatCharPolyMatchesExact) {
    for (const auto& g : {drifted_grid(1, 2, 3, 4), testing_graphs::honeycomb()}) {
        auto t = torus_setup(g, 2);
        auto exact = char_poly(t.dg, t.orientation, t.markers);
        auto fl = char_poly_float(t.dg, t.orientation, t.markers);
        for (const auto& [e, c] : exact.terms) EXPECT_NEAR(fl.coeff(e), to_double(c), 1e-8 * (1 + abs(to_double(c))));
        EXPECT_EQ(fl.terms.size(), exact.terms.size());
    }
}

TEST(Kasteleyn, UniformN1PartitionFunctionIsEight) {
    auto t = torus_setup(uniform_grid(), 1);
    auto p = char_poly(t.dg, t.orientation, t.markers);
    // The height expansion at N = 1 is the symbol itself.
    auto g = align_gauge(p, uniform_symbol());
    ASSERT_TRUE(g);
    auto pf = partition_function(t.dg, t.orientation, t.markers, predicted_pattern(*g));
    EXPECT_EQ(pf.value, 8);
    auto hits = calibrate_patterns(pf.dets, 8);
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_EQ(hits[0], pf.pattern);
}

TEST(Kasteleyn, WiredMatrixIsSquareWithoutMarkers) {
    auto w = build_wired(uniform_grid(), 3);
    auto dg = build_double(w);
    auto k = kasteleyn_matrix(dg, orient(dg), no_markers(dg), Rational(1), Rational(1));
    EXPECT_EQ(k.rows(), k.cols());
    // A single interior vertex: four spanning trees.
    EXPECT_EQ(abs(determinant(k)), 4);
}
