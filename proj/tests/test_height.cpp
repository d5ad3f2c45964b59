#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dimers/height.hpp"
#include "dimers/kasteleyn.hpp"
#include "test_graphs.hpp"

using namespace dimers;

namespace {

// (graph, largest n small enough to enumerate)
std::vector<std::pair<PeriodicGraph, int>> test_graphs() {
    std::vector<std::pair<PeriodicGraph, int>> out = {
        {uniform_grid(), 2}, {drifted_grid(1, 2, 3, 4), 2}, {testing_graphs::honeycomb(), 2}};
    for (unsigned s : {1u, 2u, 7u}) {
        auto g = testing_graphs::random_spec(s);
        out.push_back({g, g.vertices.size() == 1 ? 2 : 1});
    }
    return out;
}

}  // namespace

TEST(Height, HomologyFormulaHoldsForEveryConfiguration) {
    for (const auto& [g, max_n] : test_graphs())
        for (int n = 1; n <= max_n; ++n) {
            auto dg = build_double(build_quotient(g, n));
            auto r = height_homology_report(dg);
            EXPECT_GT(r.total, 0);
            EXPECT_EQ(r.passed, r.total) << g.name << " n=" << n << " " << r.to_json();
        }
}

TEST(Height, ExpansionMatchesCharacteristicPolynomial) {
    for (const auto& [g, max_n] : test_graphs())
        for (int n = 1; n <= max_n; ++n) {
            auto t = torus_setup(g, n);
            auto p = char_poly(t.dg, t.orientation, t.markers);
            auto h = height_expansion(t.dg);
            auto gauge = align_gauge(p, h);
            EXPECT_TRUE(gauge) << g.name << " n=" << n << "\n  det K: " << pretty(p) << "\n  heights: " << pretty(h);
            if (gauge) {
                auto pf = partition_function(t.dg, t.orientation, t.markers, predicted_pattern(*gauge));
                Rational z = 0;
                for (const auto& m : enumerate_dimers(t.dg)) z += m.weight;
                EXPECT_EQ(pf.value, z);
                auto hits = calibrate_patterns(pf.dets, z);
                EXPECT_NE(std::find(hits.begin(), hits.end(), pf.pattern), hits.end());
            }
        }
}

TEST(Height, PathIndependentAndBaseIsZero) {
    auto dg = build_double(build_quotient(drifted_grid(1, 2, 3, 4), 2));
    for (const auto& m : enumerate_dimers(dg)) {
        auto bfs = height_function(dg, m, 3, Propagation::Bfs);
        auto dfs = height_function(dg, m, 3, Propagation::Dfs);
        EXPECT_EQ(bfs.height[3], 0);
        ASSERT_EQ(bfs.change, dfs.change);
        for (size_t q = 0; q < dg.quads.size(); ++q)
            EXPECT_NEAR(bfs.at(int(q), {}), dfs.at(int(q), {}), 1e-9);
        EXPECT_LT(bfs.closedness_error, 1e-9);
    }
}

TEST(Height, HeightChangeIsIndependentOfBase) {
    auto dg = build_double(build_quotient(testing_graphs::honeycomb(), 2));
    for (const auto& m : enumerate_dimers(dg)) {
        auto ref = height_function(dg, m, 0).change;
        for (int b : {5, 11, 17}) EXPECT_EQ(height_function(dg, m, b).change, ref);
    }
}

TEST(Height, AdjacentFacesDifferByTurningAngle) {
    auto dg = build_double(build_quotient(uniform_grid(), 2));
    auto m = enumerate_dimers(dg)[0];
    std::vector<char> matched(dg.half.size(), 0);
    for (int h : m.halves) matched[h] = 1;
    auto hf = height_function(dg, m);
    for (size_t h = 0; h < dg.half.size(); ++h) {
        if (matched[h]) continue;
        int qr = dg.quad_right[h], ql = dg.quad_left[h];
        // Square lattice: every unmatched crossing turns the diagonal by a right angle.
        EXPECT_NEAR(crossing_angle(dg, int(h)), std::numbers::pi / 2, 1e-12);
        double diff = hf.height[ql] - hf.height[qr];
        double k = (diff - std::numbers::pi / 2) / (2 * std::numbers::pi);
        EXPECT_NEAR(k, std::round(k), 1e-9);
    }
}

TEST(Height, ExpansionAtRationalPoints) {
    auto t = torus_setup(drifted_grid(1, 2, 3, 4), 1);
    auto h = height_expansion(t.dg);
    auto p = char_poly(t.dg, t.orientation, t.markers);
    auto g = align_gauge(p, h);
    ASSERT_TRUE(g);
    for (auto [z, w] : {std::pair{Rational(1, 2), Rational(3)}, std::pair{Rational(-2, 5), Rational(7, 4)}}) {
        Rational lhs = determinant(kasteleyn_matrix(t.dg, t.orientation, t.markers, z, w));
        Rational rhs = g->sign * ipow(z, g->shift.x) * ipow(w, g->shift.y) * h(z, w);
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Homology, ClassesAndCounts) {
    EXPECT_EQ(normalize_class({-1, 0}), (IVec2{1, 0}));
    EXPECT_EQ(normalize_class({0, -1}), (IVec2{0, 1}));
    EXPECT_EQ(normalize_class({-2, 3}), (IVec2{2, -3}));
    auto t = build_quotient(uniform_grid(), 1);
    auto dg = build_double(t);
    int seen_horizontal = 0;
    for (const auto& m : enumerate_dimers(dg)) {
        auto pair = dimer_to_forest(dg, m);
        auto h = homology_data(t, pair);
        EXPECT_EQ(h.k, 1);
        if (h.mn == IVec2{1, 0}) {
            ++seen_horizontal;
            EXPECT_EQ(predicted_height_change(h), (IVec2{0, 1 - h.k1 - h.k2}));
        }
    }
    EXPECT_EQ(seen_horizontal, 4);
    // Two parallel horizontal cycles.
    auto t2 = build_quotient(uniform_grid(), 2);
    OcrsfPair bad;
    bad.primal.out.assign(4, -1);
    for (int v = 0; v < 4; ++v)
        for (int dart : t2.rotation[v])
            if (t2.vec(dart).x > 0.5) bad.primal.out[v] = dart;
    bad.dual.out.assign(4, -1);
    EXPECT_EQ(homology_data(t2, bad).mn, (IVec2{1, 0}));
    EXPECT_EQ(homology_data(t2, bad).k, 2);
    EXPECT_EQ(homology_data(t2, bad).k1, 2);
}

TEST(Winding, ElementaryPaths) {
    EXPECT_EQ(winding({{1, 0}, {1, 0}, {1, 0}}), 0);
    EXPECT_NEAR(winding({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), 3 * std::numbers::pi / 2, 1e-12);
    // The reversed square turns right three times.
    EXPECT_NEAR(winding({{0, -1}, {-1, 0}, {0, 1}, {1, 0}}), -3 * std::numbers::pi / 2, 1e-12);
    EXPECT_NEAR(winding({{1, 0}, {0, -1}}), -std::numbers::pi / 2, 1e-12);
    auto w = build_wired(uniform_grid(), 4);
    EXPECT_THROW(branch_winding(w.graph, std::vector<int>{0, 3}, true), Error);
}

TEST(Winding, KpwIdentityOnWiredTrees) {
    for (const auto& g : {uniform_grid(), drifted_grid(1, 2, 3, 4), testing_graphs::honeycomb()}) {
        auto dg = build_double(build_wired(g, 4));
        int branches = 0;
        for (const auto& m : enumerate_dimers(dg)) {
            auto r = check_kpw(dg, m);
            branches += r.branches;
            EXPECT_LT(r.max_error, 1e-9) << g.name;
        }
        EXPECT_GT(branches, 0);
    }
}

TEST(Height, ConfigDumpLine) {
    auto dg = build_double(build_quotient(drifted_grid(Rational(1, 2), 2, 3, 4), 1));
    auto ms = enumerate_dimers(dg);
    auto line = config_dump_line(dg, ms[0]);
    EXPECT_NE(line.find("\"edges\""), std::string::npos);
    EXPECT_NE(line.find("\"homology\""), std::string::npos);
    EXPECT_NE(line.find("\"k1\""), std::string::npos);
    bool fraction = false;
    for (const auto& m : ms) fraction = fraction || config_dump_line(dg, m).find("\"1/2\"") != std::string::npos;
    EXPECT_TRUE(fraction);
}
