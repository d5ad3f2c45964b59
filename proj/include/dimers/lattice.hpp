#pragma once

#include <array>
#include <string>
#include <vector>

#include "dimers/core.hpp"

namespace dimers {

struct PeriodicVertex {
    std::string id;
    Vec2 pos;
};

struct PeriodicEdge {
    int tail = 0;
    int head = 0;
    IVec2 offset;  // head lives in cell `offset` relative to tail
    Rational w_fwd;
    Rational w_bwd;
};

struct PeriodicGraph {
    std::string name;
    std::vector<PeriodicVertex> vertices;
    std::vector<PeriodicEdge> edges;
    bool rational_weights = false;  // some weight was given as a "p/q" string
};

PeriodicGraph parse_graph_spec(const std::string& text);
std::string to_graph_spec(const PeriodicGraph& g);
// Throws Error describing the first violated invariant.
void validate(const PeriodicGraph& g);

// One vertex, a horizontal edge with weights (a east, c west) and a vertical
// edge with weights (d north, b south).
PeriodicGraph drifted_grid(const Rational& a, const Rational& b, const Rational& c, const Rational& d);
inline PeriodicGraph uniform_grid() { return drifted_grid(1, 1, 1, 1); }

struct EdgeRecord {
    int tail = 0;
    int head = 0;
    Rational w_fwd;
    Rational w_bwd;
    Vec2 vec;          // displacement tail -> head in the lifted plane
    IVec2 wrap;        // torus periods crossed going tail -> head
    int base_edge = -1;
    IVec2 cell;        // cell of the tail copy
    Vec2 stub_point;   // wired stubs: where the edge meets the glued boundary
};

// A finite graph cellularly embedded on the torus (period > 0) or the sphere.
// Darts: 2e is tail -> head of edge e, 2e + 1 the reverse.
struct EmbeddedGraph {
    std::string name;
    int period = 0;
    int root = -1;
    std::vector<Vec2> pos;
    std::vector<int> base_vertex;
    std::vector<IVec2> vertex_cell;
    std::vector<EdgeRecord> edges;
    std::vector<std::vector<int>> rotation;  // outgoing darts, counterclockwise
    std::vector<int> rot_index;
    std::vector<std::vector<int>> faces;     // dart cycles with the face on the left
    std::vector<int> dart_face;
    std::vector<IVec2> dart_lift;            // period lift of a dart's tail in its face frame
    std::vector<Vec2> face_center;

    int num_vertices() const { return int(pos.size()); }
    int num_edges() const { return int(edges.size()); }
    int num_darts() const { return 2 * num_edges(); }
    int num_faces() const { return int(faces.size()); }

    static int edge_of(int d) { return d >> 1; }
    static int twin(int d) { return d ^ 1; }
    static bool forward(int d) { return (d & 1) == 0; }

    int tail(int d) const { return forward(d) ? edges[d >> 1].tail : edges[d >> 1].head; }
    int head(int d) const { return tail(twin(d)); }
    const Rational& weight(int d) const { return forward(d) ? edges[d >> 1].w_fwd : edges[d >> 1].w_bwd; }
    Vec2 vec(int d) const { return forward(d) ? edges[d >> 1].vec : -edges[d >> 1].vec; }
    IVec2 wrap(int d) const { return forward(d) ? edges[d >> 1].wrap : -edges[d >> 1].wrap; }
    // Tail position of a dart; darts leaving the root start at their stub point.
    Vec2 origin(int d) const {
        return tail(d) == root ? edges[d >> 1].stub_point : pos[tail(d)];
    }
    // Tail position in the frame of the face on the left of d.
    Vec2 origin_in_face(int d) const { return origin(d) + double(period) * Vec2::of(dart_lift[d]); }
    int next_ccw(int d) const {
        const auto& r = rotation[tail(d)];
        return r[(rot_index[d] + 1) % r.size()];
    }
    int prev_ccw(int d) const {
        const auto& r = rotation[tail(d)];
        return r[(rot_index[d] + r.size() - 1) % r.size()];
    }
    int face_next(int d) const { return prev_ccw(twin(d)); }
    // Period jump of the midpoint of d's edge, seen from d's face frame, relative
    // to the canonical midpoint tail(2e) + vec/2.
    IVec2 midpoint_jump_in_face(int d) const {
        return forward(d) ? dart_lift[d] : dart_lift[d] - edges[d >> 1].wrap;
    }
    int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }
};

using TorusGraph = EmbeddedGraph;

// Computes rot_index, faces, dart lifts and face centers from `rotation`.
void finish_embedding(EmbeddedGraph& g);

TorusGraph build_quotient(const PeriodicGraph& g, int n);

struct WiredGraph {
    EmbeddedGraph graph;  // interior vertices then the root
    int root_dual = -1;   // removed dual vertex r*, a face incident to the root
    int n = 0;
};
// `root_dual_choice` indexes the faces incident to the root in increasing id order.
WiredGraph build_wired(const PeriodicGraph& g, int n, int root_dual_choice = 0);

// Vertices are the host faces, edge e* runs from the face left of e to the face
// right of e, and the dual dart with id d leaves the face of host dart d.
EmbeddedGraph build_dual(const EmbeddedGraph& host);

enum class Role : int { Tail = 0, Head = 1, Left = 2, Right = 3 };

struct HalfEdge {
    int black = 0;
    int white = 0;
    Role role = Role::Tail;
    Rational weight;
    Vec2 vec;    // black -> white
    IVec2 jump;  // white as reached from the black's canonical lift, in periods
    int dart = 0;  // host dart (primal roles) or dual dart (dual roles) leaving `black`
};

struct Quad {
    std::array<int, 4> sides;   // half-edge ids in boundary order: b0-w0, w0-b1, b1-w1, w1-b0
    std::array<int, 2> blacks;
    std::array<IVec2, 4> lift;  // lift of each side's black in the quad frame
    bool removed = false;
};

// The bipartite superposition of a host graph and its dual.
// Black ids: primal vertex v is v, face f is num_primal + f. White e is edge e.
// Half-edge 4e + role.
struct DoubleGraph {
    EmbeddedGraph host;
    int num_primal = 0;
    int num_dual = 0;
    int num_white = 0;
    std::vector<HalfEdge> half;
    std::vector<std::vector<int>> black_rotation;  // half-edge ids, counterclockwise
    std::vector<std::array<int, 4>> white_rotation;
    std::vector<char> removed;                     // per black
    std::vector<int> row_of_black;                 // -1 for removed blacks
    std::vector<int> black_of_row;
    std::vector<Quad> quads;
    std::vector<int> quad_left;   // per half-edge: quad on the left of black -> white
    std::vector<int> quad_right;

    int num_black() const { return num_primal + num_dual; }
    int num_rows() const { return int(black_of_row.size()); }
    bool is_dual(int black) const { return black >= num_primal; }
    static int half_id(int edge, Role r) { return 4 * edge + int(r); }
};

DoubleGraph build_double(const EmbeddedGraph& host, const std::vector<int>& removed_blacks = {});
DoubleGraph build_double(const WiredGraph& w);

struct DualPaths {
    std::array<std::vector<int>, 2> gamma;  // dual darts of gamma_x, gamma_y
    // Per host edge: signed crossings of gamma_x, gamma_y by the forward dart
    // (+1 when it passes from the left of the path to its right).
    std::vector<std::array<int, 2>> cross;
};

// Shortest dual cycles of class (1,0) and (0,1), lowest-id tie-breaking.
// A start face that yields a non-simple cycle is skipped for the next one.
DualPaths choose_dual_paths(const TorusGraph& t, int start_x = 0, int start_y = 0);

}  // namespace dimers
