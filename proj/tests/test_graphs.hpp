#pragma once

#include <random>
#include <string>

#include "dimers/lattice.hpp"

// Small periodic graphs shared by the test suites.
namespace testing_graphs {

inline std::string drifted_json(const std::string& a, const std::string& b, const std::string& c,
                                const std::string& d) {
    return R"({"name":"drifted","vertices":[{"id":"v","pos":[0.5,0.5]}],"edges":[)"
           R"({"tail":"v","head":"v","offset":[1,0],"w_fwd":)" + a + R"(,"w_bwd":)" + c + "}," +
           R"({"tail":"v","head":"v","offset":[0,1],"w_fwd":)" + d + R"(,"w_bwd":)" + b + "}]}";
}

// Brick-wall honeycomb with asymmetric weights.
inline dimers::PeriodicGraph honeycomb() {
    using dimers::Rational;
    dimers::PeriodicGraph g;
    g.name = "honeycomb";
    g.vertices = {{"A", {0.25, 0.5}}, {"B", {0.75, 0.5}}};
    g.edges = {{0, 1, {0, 0}, 1, 2}, {1, 0, {1, 0}, 3, Rational(1) / 2}, {0, 1, {0, -1}, 2, 1}};
    dimers::validate(g);
    return g;
}

// k x k patch of the square grid with random diagonals and weights.
inline dimers::PeriodicGraph random_spec(unsigned seed) {
    using dimers::IVec2;
    using dimers::Rational;
    std::mt19937 rng(seed);
    int k = 1 + int(rng() % 2);
    dimers::PeriodicGraph g;
    g.name = "random" + std::to_string(seed);
    for (int y = 0; y < k; ++y)
        for (int x = 0; x < k; ++x)
            g.vertices.push_back({"v" + std::to_string(x) + "_" + std::to_string(y),
                                  {(x + 0.5) / k, (y + 0.5) / k}});
    auto fd = [k](int a) { return a >= 0 ? a / k : -((-a + k - 1) / k); };
    auto index = [&](int X, int Y) { return (Y - k * fd(Y)) * k + (X - k * fd(X)); };
    auto weight = [&]() { return Rational(int(1 + rng() % 3)) / Rational(int(1 + rng() % 2)); };
    auto add = [&](int X0, int Y0, int X1, int Y1) {
        dimers::PeriodicEdge e;
        e.tail = index(X0, Y0);
        e.head = index(X1, Y1);
        e.offset = IVec2{fd(X1) - fd(X0), fd(Y1) - fd(Y0)};
        e.w_fwd = weight();
        e.w_bwd = weight();
        g.edges.push_back(e);
    };
    for (int y = 0; y < k; ++y)
        for (int x = 0; x < k; ++x) {
            add(x, y, x + 1, y);
            add(x, y, x, y + 1);
            switch (rng() % 3) {
                case 1: add(x, y, x + 1, y + 1); break;
                case 2: add(x + 1, y, x, y + 1); break;
                default: break;
            }
        }
    dimers::validate(g);
    return g;
}

}  // namespace testing_graphs
