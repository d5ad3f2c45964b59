#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "dimers/lattice.hpp"
#include "test_graphs.hpp"

using namespace dimers;

TEST(ParseSpec, DriftedGrid) {
    auto g = parse_graph_spec(testing_graphs::drifted_json("1", "2", "3", "4"));
    EXPECT_EQ(g.vertices.size(), 1u);
    EXPECT_EQ(g.edges.size(), 2u);
    EXPECT_EQ(g.edges[0].w_fwd, 1);
    EXPECT_EQ(g.edges[0].w_bwd, 3);
    EXPECT_EQ(g.edges[1].w_fwd, 4);
    EXPECT_EQ(g.edges[1].w_bwd, 2);
    EXPECT_FALSE(g.rational_weights);
    auto r = parse_graph_spec(testing_graphs::drifted_json("\"1/2\"", "2", "3", "4"));
    EXPECT_TRUE(r.rational_weights);
    EXPECT_EQ(r.edges[0].w_fwd, Rational(1) / 2);
}

TEST(ParseSpec, RoundTripsThroughSerializer) {
    auto g = drifted_grid(Rational(1) / 3, 2, 3, 4);
    auto h = parse_graph_spec(to_graph_spec(g));
    EXPECT_EQ(h.edges[0].w_fwd, Rational(1) / 3);
    EXPECT_EQ(h.edges[1].w_bwd, 2);
}

TEST(ParseSpec, RejectsNegativeWeight) {
    try {
        parse_graph_spec(testing_graphs::drifted_json("-1", "1", "1", "1"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("negative weight"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("edge #0"), std::string::npos);
    }
}

TEST(ParseSpec, RejectsSchemaViolations) {
    EXPECT_THROW(parse_graph_spec("{"), Error);
    EXPECT_THROW(parse_graph_spec(R"({"vertices": []})"), Error);
    EXPECT_THROW(parse_graph_spec(R"({"vertices":[{"id":"v","pos":[0.5,0.5]}],
        "edges":[{"tail":"v","head":"u","offset":[1,0],"w_fwd":1,"w_bwd":1}]})"),
                 Error);
    EXPECT_THROW(parse_graph_spec(R"({"vertices":[{"id":"v","pos":[0.5,0.5]}],
        "edges":[{"tail":"v","head":"v","offset":[1,0],"w_fwd":1}]})"),
                 Error);
}

TEST(ParseSpec, RejectsCrossingEdges) {
    const char* spec = R"({"name":"x","vertices":[{"id":"v","pos":[0.5,0.5]}],"edges":[
        {"tail":"v","head":"v","offset":[1,0],"w_fwd":1,"w_bwd":1},
        {"tail":"v","head":"v","offset":[0,1],"w_fwd":1,"w_bwd":1},
        {"tail":"v","head":"v","offset":[1,1],"w_fwd":1,"w_bwd":1},
        {"tail":"v","head":"v","offset":[1,-1],"w_fwd":1,"w_bwd":1}]})";
    try {
        parse_graph_spec(spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("non-planar"), std::string::npos);
    }
}

TEST(ParseSpec, RejectsDisconnectedLift) {
    const char* spec = R"({"name":"x","vertices":[{"id":"v","pos":[0.5,0.5]}],"edges":[
        {"tail":"v","head":"v","offset":[2,0],"w_fwd":1,"w_bwd":1},
        {"tail":"v","head":"v","offset":[0,1],"w_fwd":1,"w_bwd":1}]})";
    EXPECT_THROW(parse_graph_spec(spec), Error);
}

TEST(Quotient, CountsAndWeights) {
    auto g = drifted_grid(1, 2, 3, 4);
    for (int n : {1, 2, 3}) {
        auto t = build_quotient(g, n);
        EXPECT_EQ(t.num_vertices(), n * n);
        EXPECT_EQ(t.num_edges(), 2 * n * n);
        EXPECT_EQ(t.euler_characteristic(), 0);
        for (const auto& e : t.edges) {
            EXPECT_EQ(e.w_fwd, g.edges[e.base_edge].w_fwd);
            EXPECT_EQ(e.w_bwd, g.edges[e.base_edge].w_bwd);
            EXPECT_EQ(t.base_vertex[e.tail], g.edges[e.base_edge].tail);
        }
    }
    EXPECT_THROW(build_quotient(g, 0), Error);
    auto t1 = build_quotient(uniform_grid(), 1);
    EXPECT_EQ(t1.num_vertices(), 1);
    EXPECT_EQ(t1.num_edges(), 2);
    EXPECT_EQ(t1.num_faces(), 1);
}

TEST(Dual, SquareLatticeIsSelfDual) {
    auto t1 = build_quotient(uniform_grid(), 1);
    auto d1 = build_dual(t1);
    EXPECT_EQ(d1.num_vertices(), 1);
    EXPECT_EQ(d1.num_edges(), 2);
    auto t2 = build_quotient(drifted_grid(1, 2, 3, 4), 2);
    auto d2 = build_dual(t2);
    EXPECT_EQ(d2.num_vertices(), 4);
    EXPECT_EQ(d2.num_edges(), 8);
    EXPECT_EQ(d2.euler_characteristic(), 0);
    for (int f = 0; f < d2.num_vertices(); ++f) EXPECT_EQ(d2.rotation[f].size(), 4u);
    for (const auto& e : d2.edges) {
        EXPECT_EQ(e.w_fwd, 1);
        EXPECT_EQ(e.w_bwd, 1);
    }
}

TEST(Dual, DualOfDualReturnsHost) {
    for (const auto& g : {uniform_grid(), testing_graphs::honeycomb(), testing_graphs::random_spec(5)}) {
        for (int n : {1, 2}) {
            auto t = build_quotient(g, n);
            auto d = build_dual(t);
            auto dd = build_dual(d);
            ASSERT_EQ(dd.num_vertices(), t.num_vertices());
            ASSERT_EQ(dd.num_edges(), t.num_edges());
            // Faces of the dual are the stars of host vertices: every dart of the
            // dual face around v enters v.
            std::set<int> seen;
            for (const auto& face : d.faces) {
                int v = t.head(face[0]);
                for (int x : face) EXPECT_EQ(t.head(x), v);
                EXPECT_EQ(face.size(), t.rotation[v].size());
                seen.insert(v);
            }
            EXPECT_EQ(int(seen.size()), t.num_vertices());
            // Dual-of-edge is an involution on edge ids.
            for (int e = 0; e < t.num_edges(); ++e) {
                EXPECT_EQ(dd.edges[e].base_edge, t.edges[e].base_edge);
            }
        }
    }
}

TEST(Double, UniformN1) {
    auto dg = build_double(build_quotient(uniform_grid(), 1));
    EXPECT_EQ(dg.num_black(), 2);
    EXPECT_EQ(dg.num_white, 2);
    EXPECT_EQ(dg.half.size(), 8u);
    EXPECT_EQ(dg.quads.size(), 4u);
}

TEST(Double, WeightTransfer) {
    auto g = drifted_grid(2, 1, 5, 1);
    auto dg = build_double(build_quotient(g, 2));
    for (int e = 0; e < dg.num_white; ++e) {
        const auto& h = dg.host.edges[e];
        EXPECT_EQ(dg.half[4 * e + 0].weight, h.w_fwd);
        EXPECT_EQ(dg.half[4 * e + 1].weight, h.w_bwd);
        EXPECT_EQ(dg.half[4 * e + 2].weight, 1);
        EXPECT_EQ(dg.half[4 * e + 3].weight, 1);
        if (h.base_edge == 0) {
            EXPECT_EQ(dg.half[4 * e + 0].weight, 2);
            EXPECT_EQ(dg.half[4 * e + 1].weight, 5);
        }
    }
}

TEST(Double, EveryFaceIsAQuadrilateral) {
    for (unsigned seed = 0; seed < 12; ++seed) {
        auto g = testing_graphs::random_spec(seed);
        for (int n : {1, 2}) {
            auto t = build_quotient(g, n);
            auto dg = build_double(t);
            EXPECT_EQ(dg.num_black(), dg.num_white);
            EXPECT_EQ(int(dg.quads.size()), 2 * t.num_edges());
            for (const auto& q : dg.quads) {
                EXPECT_FALSE(dg.is_dual(q.blacks[0]) == dg.is_dual(q.blacks[1]));
            }
            for (size_t h = 0; h < dg.half.size(); ++h) {
                EXPECT_GE(dg.quad_left[h], 0);
                EXPECT_GE(dg.quad_right[h], 0);
            }
        }
    }
}

TEST(Wired, SmallGrids) {
    auto w3 = build_wired(uniform_grid(), 3);
    EXPECT_EQ(w3.graph.num_vertices(), 2);
    EXPECT_EQ(w3.graph.root, 1);
    EXPECT_EQ(w3.graph.euler_characteristic(), 2);

    auto w4 = build_wired(drifted_grid(1, 2, 3, 4), 4);
    const auto& g = w4.graph;
    EXPECT_EQ(g.root, 4);
    for (int v = 0; v < g.root; ++v) {
        Rational out = 0;
        for (int d : g.rotation[v]) out += g.weight(d);
        EXPECT_EQ(out, 10);
    }
    auto dg = build_double(w4);
    EXPECT_EQ(dg.num_rows(), dg.num_white);
    EXPECT_THROW(build_wired(uniform_grid(), 1), Error);
    // Root dual is a face touching the root.
    bool touches = false;
    for (int d : g.faces[w4.root_dual]) touches = touches || g.tail(d) == g.root;
    EXPECT_TRUE(touches);
}

TEST(Wired, BalancedForEveryRootDualChoice) {
    auto g = testing_graphs::honeycomb();
    for (int choice = 0; choice < 3; ++choice) {
        auto w = build_wired(g, 4, choice);
        auto dg = build_double(w);
        EXPECT_EQ(dg.num_rows(), dg.num_white);
    }
}

TEST(DualPaths, UniformN1CrossesOneEdgeEach) {
    auto t = build_quotient(uniform_grid(), 1);
    auto p = choose_dual_paths(t);
    ASSERT_EQ(p.gamma[0].size(), 1u);
    ASSERT_EQ(p.gamma[1].size(), 1u);
    // gamma_x runs horizontally and therefore crosses the vertical edge.
    EXPECT_EQ(t.edges[p.gamma[0][0] >> 1].base_edge, 1);
    EXPECT_EQ(t.edges[p.gamma[1][0] >> 1].base_edge, 0);
    EXPECT_EQ(std::abs(p.cross[1][0]), 1);
    EXPECT_EQ(p.cross[0][0], 0);
}

TEST(DualPaths, ClassesAndIntersection) {
    for (const auto& g : {uniform_grid(), drifted_grid(1, 2, 3, 4), testing_graphs::honeycomb()}) {
        for (int n : {1, 2, 3}) {
            auto t = build_quotient(g, n);
            auto d = build_dual(t);
            auto p = choose_dual_paths(t);
            IVec2 cls[2];
            for (int k = 0; k < 2; ++k) {
                std::set<int> faces;
                for (int x : p.gamma[k]) {
                    cls[k] += d.wrap(x);
                    EXPECT_TRUE(faces.insert(d.tail(x)).second);
                }
                for (size_t i = 0; i < p.gamma[k].size(); ++i)
                    EXPECT_EQ(d.head(p.gamma[k][i]), d.tail(p.gamma[k][(i + 1) % p.gamma[k].size()]));
            }
            EXPECT_EQ(cls[0], (IVec2{1, 0}));
            EXPECT_EQ(cls[1], (IVec2{0, 1}));
            EXPECT_EQ(std::abs(cls[0].x * cls[1].y - cls[0].y * cls[1].x), 1);
            if (g.vertices.size() == 1) {
                EXPECT_EQ(int(p.gamma[0].size()), n);
                EXPECT_EQ(int(p.gamma[1].size()), n);
            }
        }
    }
}
