#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "dimers/laurent.hpp"
#include "dimers/linalg.hpp"

using namespace dimers;

namespace {

Matrix<Rational> random_int_matrix(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> u(-4, 4);
    Matrix<Rational> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = u(rng);
    return m;
}

// Leibniz expansion restricted to permutations with sigma(rs[k]) = cs[k].
Rational leibniz(const Matrix<Rational>& a, const std::vector<int>& rs, const std::vector<int>& cs) {
    const int n = a.rows();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Rational total = 0;
    do {
        bool ok = true;
        for (size_t k = 0; k < rs.size(); ++k) ok = ok && p[rs[k]] == cs[k];
        if (!ok) continue;
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
        Rational t = inv % 2 ? -1 : 1;
        for (int i = 0; i < n; ++i) t *= a(i, p[i]);
        total += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("3/7"), Rational(3) / 7);
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3) / 2);
    EXPECT_EQ(parse_rational("0.125"), Rational(1) / 8);
    EXPECT_EQ(parse_rational("-2.5"), Rational(-5) / 2);
    EXPECT_EQ(parse_rational("42"), Rational(42));
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Linalg, BareissMatchesLeibniz) {
    for (unsigned s = 0; s < 5; ++s) {
        auto m = random_int_matrix(5, s);
        EXPECT_EQ(determinant(m), leibniz(m, {}, {}));
    }
}

TEST(Linalg, FloatDeterminantAgrees) {
    auto m = random_int_matrix(6, 11);
    EXPECT_NEAR(determinant(convert<double>(m)), to_double(determinant(m)), 1e-8);
}

TEST(Linalg, InverseAndRightSolve) {
    auto m = random_int_matrix(5, 3);
    ASSERT_NE(determinant(m), 0);
    auto inv = inverse(m);
    ASSERT_TRUE(inv);
    EXPECT_EQ(m * *inv, Matrix<Rational>::identity(5));
    auto b = random_int_matrix(5, 4);
    auto x = solve_right(m, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(*x * m, b);
    Matrix<Rational> singular(2, 2);
    singular(0, 0) = 1, singular(0, 1) = 2, singular(1, 0) = 2, singular(1, 1) = 4;
    EXPECT_FALSE(inverse(singular));
    EXPECT_FALSE(inverse(convert<double>(singular)));
}

TEST(Linalg, LaplaceSignMatchesRestrictedExpansion) {
    auto m = random_int_matrix(6, 7);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> cases = {
        {{0}, {0}}, {{2}, {5}}, {{1, 4}, {3, 0}}, {{5, 0}, {0, 5}}, {{3, 1, 2}, {2, 4, 1}}};
    for (auto& [rs, cs] : cases) {
        std::vector<int> keep_r, keep_c;
        for (int i = 0; i < 6; ++i) {
            if (std::find(rs.begin(), rs.end(), i) == rs.end()) keep_r.push_back(i);
            if (std::find(cs.begin(), cs.end(), i) == cs.end()) keep_c.push_back(i);
        }
        Rational prod = 1;
        for (size_t k = 0; k < rs.size(); ++k) prod *= m(rs[k], cs[k]);
        Rational got = prod * laplace_sign(rs, cs) * determinant(m.select(keep_r, keep_c));
        EXPECT_EQ(got, leibniz(m, rs, cs));
    }
}

TEST(Laurent, ExactInterpolationRecoversPolynomial) {
    RationalPoly p;
    p.add({0, 0}, 4);
    p.add({1, 0}, -1);
    p.add({-1, 0}, -1);
    p.add({0, 1}, Rational(-3) / 2);
    p.add({0, -1}, -1);
    p.add({1, -1}, 7);
    auto q = interpolate_exact([&](const Rational& z, const Rational& w) { return p(z, w); }, {-1, -1}, {1, 1});
    EXPECT_EQ(p, q);
}

TEST(Laurent, DftInterpolationRecoversPolynomial) {
    LaurentPoly<double> p;
    p.add({0, 0}, 4);
    p.add({2, -1}, -0.5);
    p.add({-1, 1}, 3);
    auto q = interpolate_dft([&](Complex z, Complex w) { return p(z, w); }, {-2, -2}, {2, 2});
    ASSERT_EQ(q.terms.size(), 3u);
    for (const auto& [e, c] : p.terms) EXPECT_NEAR(q.coeff(e), c, 1e-12);
}

TEST(Laurent, GaugeAlignment) {
    RationalPoly p;
    p.add({0, 0}, 4);
    p.add({1, 0}, -1);
    p.add({0, 1}, -2);
    auto q = p.shifted({2, -1}).scaled(-1);
    auto g = align_gauge(q, p);
    ASSERT_TRUE(g);
    EXPECT_EQ(g->sign, -1);
    EXPECT_EQ(g->shift, (IVec2{2, -1}));
    auto r = p;
    r.add({0, 0}, 1);
    EXPECT_FALSE(align_gauge(r, p));
}

TEST(Laurent, NewtonPolygonOfUniformPolynomial) {
    RationalPoly p;
    p.add({0, 0}, 4);
    for (IVec2 e : {IVec2{1, 0}, IVec2{-1, 0}, IVec2{0, 1}, IVec2{0, -1}}) p.add(e, -1);
    auto np = newton_polygon(p);
    std::vector<IVec2> expected = {{-1, 0}, {0, -1}, {1, 0}, {0, 1}};
    EXPECT_EQ(np.vertices, expected);
    EXPECT_EQ(np.boundary.size(), 4u);
    ASSERT_EQ(np.interior.size(), 1u);
    EXPECT_EQ(np.interior[0], (IVec2{0, 0}));
    EXPECT_TRUE(np.contains(Vec2{0.5, 0.5}));
    EXPECT_FALSE(np.contains(Vec2{0.6, 0.6}));
    EXPECT_EQ(normalize_sign(p).coeff({-1, 0}), 1);
    EXPECT_EQ(pretty(p), "-z^-1 - w^-1 + 4 - w - z");
}

TEST(Laurent, NewtonPolygonDegenerateCases) {
    RationalPoly mono;
    mono.add({2, 3}, 5);
    auto np = newton_polygon(mono);
    EXPECT_EQ(np.vertices.size(), 1u);
    EXPECT_TRUE(np.interior.empty());
    EXPECT_THROW(newton_polygon(RationalPoly{}), Error);
}

TEST(RandomStream, DeterministicAndDistinctStreams) {
    RandomStream a(7, 0), b(7, 0), c(7, 1);
    for (int i = 0; i < 5; ++i) {
        auto x = a();
        EXPECT_EQ(x, b());
        EXPECT_NE(x, c());
    }
    double s = 0;
    RandomStream u(1, 2);
    for (int i = 0; i < 100000; ++i) s += u.uniform();
    EXPECT_NEAR(s / 100000, 0.5, 0.01);
}
