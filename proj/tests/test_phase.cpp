#include <gtest/gtest.h>

#include <sstream>

#include "dimers/height.hpp"
#include "dimers/phase.hpp"

using namespace dimers;

namespace {

ScanGrid coarse() {
    ScanGrid g;
    g.nx = g.ny = 32;
    g.samples = 96;
    return g;
}

}  // namespace

TEST(RootOrder, Examples) {
    EXPECT_EQ(root_order_at_11(phase_polynomial(drifted_grid(1, 2, 3, 4))), 1);
    EXPECT_EQ(root_order_at_11(phase_polynomial(drifted_grid(1, 2, 1, 2))), 2);
    EXPECT_EQ(root_order_at_11(phase_polynomial(uniform_grid())), 2);

    RationalPoly cube;  // (z - 1)^3
    cube.add({3, 0}, 1);
    cube.add({2, 0}, -3);
    cube.add({1, 0}, 3);
    cube.add({0, 0}, -1);
    EXPECT_EQ(root_order_at_11(cube), 3);

    RationalPoly one;
    one.add({0, 0}, 1);
    EXPECT_THROW(root_order_at_11(one), Error);
}

TEST(RootOrder, GradientCondition) {
    // Order 2 exactly when a = c and b = d.
    for (int a = 1; a <= 3; ++a)
        for (int c = 1; c <= 3; ++c) {
            int order = root_order_at_11(phase_polynomial(drifted_grid(a, 2, c, 2)));
            EXPECT_EQ(order == 2, a == c) << a << " " << c;
        }
    EXPECT_EQ(root_order_at_11(phase_polynomial(drifted_grid(2, 1, 2, 3))), 1);
}

TEST(PhasePolynomial, IsHeightExpansion) {
    for (auto g : {uniform_grid(), drifted_grid(1, 2, 3, 4)}) {
        auto t = torus_setup(g, 1);
        EXPECT_EQ(phase_polynomial(g), height_expansion(t.dg));
    }
}

TEST(Amoeba, Membership) {
    auto p = to_double(phase_polynomial(uniform_grid()));
    auto origin = amoeba_membership(p, 0, 0, 64);
    EXPECT_TRUE(origin.inside);
    EXPECT_EQ(origin.min_abs, 0.0);

    auto far = amoeba_membership(p, 10, 0, 64);
    EXPECT_FALSE(far.inside);
    EXPECT_EQ(far.order, (IVec2{1, 0}));
    EXPECT_EQ(far.slope().x, -1.0);
    EXPECT_EQ(amoeba_membership(p, 0, -10, 64).order, (IVec2{0, -1}));

    auto liquid = amoeba_membership(p, 0.3, -0.2, 128);
    EXPECT_TRUE(liquid.inside);
    EXPECT_GT(std::abs(liquid.winding.x), 0.0);
    EXPECT_LT(std::abs(liquid.winding.x), 1.0);
}

TEST(Amoeba, GaseousPointHasZeroSlope) {
    auto p = to_double(phase_polynomial(drifted_grid(1, 2, 3, 4)));
    auto a = amoeba_membership(p, 0.4, 0.6, 128);
    EXPECT_FALSE(a.inside);
    EXPECT_EQ(a.order, (IVec2{0, 0}));
}

TEST(PhaseScan, DriftedHasOneGaseousComponent) {
    auto p = phase_polynomial(drifted_grid(1, 2, 3, 4));
    auto s = phase_scan(p, coarse());
    ASSERT_EQ(s.bounded_components(), 1);
    auto nwt = newton_polygon(p);
    for (const auto& c : s.components) {
        EXPECT_TRUE(c.slope_constant);
        EXPECT_TRUE(nwt.contains(c.order));
        if (!c.bounded) continue;
        EXPECT_EQ(c.order, (IVec2{0, 0}));
        EXPECT_TRUE(c.near_origin);
        EXPECT_FALSE(c.touches_border);
    }
    for (const auto& pt : s.points) {
        if (pt.component < 0) {
            EXPECT_EQ(pt.phase, Phase::Liquid);
            continue;
        }
        const auto& c = s.components[pt.component];
        EXPECT_EQ(pt.phase, c.bounded ? Phase::Gaseous : Phase::Frozen);
        EXPECT_EQ(pt.slope.x, -c.order.x);
        EXPECT_EQ(pt.slope.y, -c.order.y);
    }
}

TEST(PhaseScan, SymmetricWeightsHaveNoGaseousPhase) {
    EXPECT_EQ(phase_scan(phase_polynomial(drifted_grid(1, 2, 1, 2)), coarse()).bounded_components(), 0);
    EXPECT_EQ(phase_scan(phase_polynomial(uniform_grid()), coarse()).bounded_components(), 0);
}

TEST(PhaseScan, ParallelMatchesSerial) {
    ScanGrid g = coarse();
    g.nx = g.ny = 16;
    auto p = phase_polynomial(drifted_grid(1, 2, 3, 4));
    auto a = phase_scan(p, g, true), b = phase_scan(p, g, false);
    EXPECT_EQ(scan_csv(a), scan_csv(b));
    EXPECT_EQ(boundary_polylines(a), boundary_polylines(b));
}

TEST(PhaseScan, CsvAndPolylines) {
    ScanGrid g = coarse();
    g.nx = g.ny = 16;
    auto s = phase_scan(phase_polynomial(drifted_grid(1, 2, 3, 4)), g);
    auto csv = scan_csv(s);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "Bx,By,phase,slope_x,slope_y,min_absP,component_id");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 16 * 16);

    auto lines = boundary_polylines(s);
    ASSERT_FALSE(lines.empty());
    std::istringstream in(lines);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream pts(line);
        std::string pt;
        int count = 0;
        while (pts >> pt) {
            double x = std::stod(pt.substr(0, pt.find(','))), y = std::stod(pt.substr(pt.find(',') + 1));
            EXPECT_GE(x, g.x0);
            EXPECT_LE(x, g.x1);
            EXPECT_GE(y, g.y0);
            EXPECT_LE(y, g.y1);
            ++count;
        }
        EXPECT_GE(count, 2);
    }
}

TEST(SlopeEstimate, ZeroField) {
    auto u = slope_estimate(uniform_grid(), {}, {1, 2});
    for (const auto& t : u.per_n) {
        ASSERT_TRUE(t.exact);
        EXPECT_EQ((*t.exact)[0], 0);
        EXPECT_EQ((*t.exact)[1], 0);
    }
    // Finite tori with drifted weights are not height-symmetric.
    auto d = slope_estimate(drifted_grid(1, 2, 3, 4), {}, {1, 2});
    EXPECT_EQ((*d.per_n[0].exact)[0], Rational(1, 10));
    EXPECT_EQ((*d.per_n[0].exact)[1], Rational(1, 10));
    EXPECT_EQ((*d.per_n[1].exact)[0], Rational(18, 155));
    EXPECT_EQ((*d.per_n[1].exact)[1], Rational(14, 155));
    EXPECT_NEAR(d.error, 5.0 / 310, 1e-15);
}

TEST(SlopeEstimate, MatchesConnectivityStats) {
    auto g = drifted_grid(1, 2, 3, 4);
    Field b{0.4, -0.7};
    auto est = slope_estimate(g, b, {2});
    auto st = connectivity_stats(g, 2, b);
    EXPECT_NEAR(est.slope.x, st.e_hx / 2, 1e-12);
    EXPECT_NEAR(est.slope.y, st.e_hy / 2, 1e-12);

    HeightSpectrum h(g, 2);
    auto exact = h.exact_slope(Rational(3, 2), Rational(1, 3));
    auto s = exact_stats(torus_setup(g, 2), Rational(3, 2), Rational(1, 3), 0, 1);
    EXPECT_EQ(exact[0], s.e_hx / 2);
    EXPECT_EQ(exact[1], s.e_hy / 2);
}

TEST(SlopeEstimate, FieldLowersSlope) {
    auto g = uniform_grid();
    auto est = slope_estimate(g, {0, 1.5}, {1, 2});
    for (const auto& t : est.per_n) EXPECT_LT(t.slope.y, 0);
}
