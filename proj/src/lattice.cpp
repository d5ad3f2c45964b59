#include "dimers/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace dimers {

using nlohmann::json;

namespace {

std::string edge_name(const PeriodicGraph& g, size_t i) {
    const auto& e = g.edges[i];
    return "edge #" + std::to_string(i) + " (" + g.vertices[e.tail].id + " -> " + g.vertices[e.head].id + ")";
}

Rational parse_weight(const json& v, bool& rational, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_unsigned()) return Rational(std::to_string(v.get<unsigned long long>()));
    if (v.is_number_float()) {
        double x = v.get<double>();
        if (!std::isfinite(x)) throw Error(where + ": weight is not finite");
        return Rational(x);
    }
    if (v.is_string()) {
        rational = true;
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            throw Error(where + ": " + e.what());
        }
    }
    throw Error(where + ": weight must be a number or a \"p/q\" string");
}

Vec2 head_point(const PeriodicGraph& g, const PeriodicEdge& e) {
    return g.vertices[e.head].pos + Vec2::of(e.offset);
}

// Base darts around each vertex, sorted counterclockwise.
std::vector<std::vector<int>> base_rotation(const PeriodicGraph& g) {
    std::vector<std::vector<std::pair<double, int>>> out(g.vertices.size());
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        Vec2 v = head_point(g, e) - g.vertices[e.tail].pos;
        out[e.tail].push_back({std::atan2(v.y, v.x), int(2 * i)});
        out[e.head].push_back({std::atan2(-v.y, -v.x), int(2 * i + 1)});
    }
    std::vector<std::vector<int>> rot(g.vertices.size());
    for (size_t v = 0; v < out.size(); ++v) {
        auto& r = out[v];
        std::sort(r.begin(), r.end());
        for (size_t k = 0; k + 1 < r.size(); ++k)
            if (r[k + 1].first - r[k].first < 1e-12)
                throw Error("non-planar embedding: edges overlap at vertex " + g.vertices[v].id);
        if (r.size() > 1 && r.front().first + 2 * M_PI - r.back().first < 1e-12)
            throw Error("non-planar embedding: edges overlap at vertex " + g.vertices[v].id);
        for (auto& [a, d] : r) rot[v].push_back(d);
    }
    return rot;
}

struct Seg {
    Vec2 a, b;
    std::pair<int, IVec2> ka, kb;  // endpoint identities (vertex, cell)
};

int orient(Vec2 a, Vec2 b, Vec2 c) {
    double v = cross(b - a, c - a);
    double scale = std::max({1.0, norm(b - a), norm(c - a)});
    if (v > 1e-12 * scale) return 1;
    if (v < -1e-12 * scale) return -1;
    return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
           std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

bool intersects(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
           (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

bool conflict(const Seg& s, const Seg& t) {
    int shared = (s.ka == t.ka) + (s.ka == t.kb) + (s.kb == t.ka) + (s.kb == t.kb);
    if (shared == 0) return intersects(s.a, s.b, t.a, t.b);
    if (shared >= 2) return true;
    Vec2 p, q1, q2;
    if (s.ka == t.ka) p = s.a, q1 = s.b, q2 = t.b;
    else if (s.ka == t.kb) p = s.a, q1 = s.b, q2 = t.a;
    else if (s.kb == t.ka) p = s.b, q1 = s.a, q2 = t.b;
    else p = s.b, q1 = s.a, q2 = t.a;
    return orient(p, q1, q2) == 0 && dot(q1 - p, q2 - p) > 0;
}

void check_planar(const PeriodicGraph& g) {
    int reach = 1;
    for (const auto& e : g.edges) reach = std::max({reach, std::abs(e.offset.x), std::abs(e.offset.y)});
    reach += 1;
    auto seg = [&](size_t i, IVec2 t) {
        const auto& e = g.edges[i];
        Vec2 sh = Vec2::of(t);
        return Seg{g.vertices[e.tail].pos + sh, head_point(g, e) + sh, {e.tail, t}, {e.head, t + e.offset}};
    };
    for (size_t i = 0; i < g.vertices.size(); ++i)
        for (size_t j = i + 1; j < g.vertices.size(); ++j) {
            Vec2 d = g.vertices[i].pos - g.vertices[j].pos;
            if (std::abs(d.x - std::round(d.x)) < 1e-12 && std::abs(d.y - std::round(d.y)) < 1e-12)
                throw Error("non-planar embedding: vertices " + g.vertices[i].id + " and " + g.vertices[j].id +
                            " coincide");
        }
    for (size_t i = 0; i < g.edges.size(); ++i) {
        Seg s = seg(i, {0, 0});
        if (norm(s.b - s.a) < 1e-12) throw Error("non-planar embedding: " + edge_name(g, i) + " has zero length");
        for (size_t j = i; j < g.edges.size(); ++j)
            for (int tx = -reach; tx <= reach; ++tx)
                for (int ty = -reach; ty <= reach; ++ty) {
                    if (i == j && tx == 0 && ty == 0) continue;
                    if (conflict(s, seg(j, {tx, ty})))
                        throw Error("non-planar embedding: " + edge_name(g, i) + " crosses " + edge_name(g, j) +
                                    " translated by (" + std::to_string(tx) + "," + std::to_string(ty) + ")");
                }
    }
}

void check_connected(const PeriodicGraph& g) {
    const size_t nv = g.vertices.size();
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (edge, +1 forward / -1 backward)
    for (size_t i = 0; i < g.edges.size(); ++i) {
        adj[g.edges[i].tail].push_back({int(i), 1});
        adj[g.edges[i].head].push_back({int(i), -1});
    }
    std::vector<IVec2> lift(nv);
    std::vector<char> seen(nv, 0);
    std::vector<char> tree(g.edges.size(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (auto [ei, dir] : adj[v]) {
            const auto& e = g.edges[ei];
            int u = dir > 0 ? e.head : e.tail;
            if (seen[u]) continue;
            seen[u] = 1;
            tree[ei] = 1;
            lift[u] = dir > 0 ? lift[v] + e.offset : lift[v] - e.offset;
            q.push_back(u);
        }
    }
    for (size_t v = 0; v < nv; ++v)
        if (!seen[v]) throw Error("disconnected graph: vertex " + g.vertices[v].id + " is unreachable");
    std::vector<IVec2> cycles;
    for (size_t i = 0; i < g.edges.size(); ++i)
        if (!tree[i]) {
            const auto& e = g.edges[i];
            IVec2 c = lift[e.tail] + e.offset - lift[e.head];
            if (!c.zero()) cycles.push_back(c);
        }
    long d = 0;
    for (size_t i = 0; i < cycles.size(); ++i)
        for (size_t j = i + 1; j < cycles.size(); ++j)
            d = std::gcd(d, std::abs(long(cycles[i].x) * cycles[j].y - long(cycles[i].y) * cycles[j].x));
    if (d != 1) throw Error("disconnected graph: the periodic lift splits into several components");
}

}  // namespace

void validate(const PeriodicGraph& g) {
    if (g.vertices.empty()) throw Error("graph spec: no vertices");
    if (g.edges.empty()) throw Error("graph spec: no edges");
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        if (e.tail < 0 || e.head < 0 || e.tail >= int(g.vertices.size()) || e.head >= int(g.vertices.size()))
            throw Error("edge #" + std::to_string(i) + ": unknown endpoint");
        if (e.w_fwd < 0 || e.w_bwd < 0) throw Error(edge_name(g, i) + ": negative weight");
    }
    check_planar(g);
    base_rotation(g);
    check_connected(g);
    TorusGraph t = build_quotient(g, 1);
    if (t.euler_characteristic() != 0)
        throw Error("broken rotation system: V - E + F = " + std::to_string(t.euler_characteristic()) +
                    " on the torus");
}

PeriodicGraph parse_graph_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("graph spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error("graph spec: top level must be an object");
    PeriodicGraph g;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw Error("graph spec: name must be a string");
        g.name = j["name"].get<std::string>();
    }
    if (!j.contains("vertices") || !j["vertices"].is_array()) throw Error("graph spec: missing vertices array");
    if (!j.contains("edges") || !j["edges"].is_array()) throw Error("graph spec: missing edges array");
    std::map<std::string, int> index;
    for (size_t i = 0; i < j["vertices"].size(); ++i) {
        const json& v = j["vertices"][i];
        std::string where = "vertex #" + std::to_string(i);
        if (!v.is_object() || !v.contains("id") || !v["id"].is_string())
            throw Error(where + ": id must be a string");
        std::string id = v["id"].get<std::string>();
        where = "vertex " + id;
        if (!v.contains("pos") || !v["pos"].is_array() || v["pos"].size() != 2 || !v["pos"][0].is_number() ||
            !v["pos"][1].is_number())
            throw Error(where + ": pos must be [x, y]");
        if (!index.emplace(id, int(i)).second) throw Error(where + ": duplicate id");
        g.vertices.push_back({id, {v["pos"][0].get<double>(), v["pos"][1].get<double>()}});
    }
    for (size_t i = 0; i < j["edges"].size(); ++i) {
        const json& e = j["edges"][i];
        std::string where = "edge #" + std::to_string(i);
        if (!e.is_object()) throw Error(where + ": must be an object");
        auto endpoint = [&](const char* key) {
            if (!e.contains(key) || !e[key].is_string()) throw Error(where + ": " + key + " must be a vertex id");
            auto it = index.find(e[key].get<std::string>());
            if (it == index.end()) throw Error(where + ": unknown vertex " + e[key].get<std::string>());
            return it->second;
        };
        PeriodicEdge pe;
        pe.tail = endpoint("tail");
        pe.head = endpoint("head");
        if (!e.contains("offset") || !e["offset"].is_array() || e["offset"].size() != 2 ||
            !e["offset"][0].is_number_integer() || !e["offset"][1].is_number_integer())
            throw Error(where + ": offset must be [int, int]");
        pe.offset = {e["offset"][0].get<int>(), e["offset"][1].get<int>()};
        if (!e.contains("w_fwd") || !e.contains("w_bwd")) throw Error(where + ": w_fwd and w_bwd are required");
        pe.w_fwd = parse_weight(e["w_fwd"], g.rational_weights, where);
        pe.w_bwd = parse_weight(e["w_bwd"], g.rational_weights, where);
        g.edges.push_back(pe);
    }
    validate(g);
    return g;
}

std::string to_graph_spec(const PeriodicGraph& g) {
    auto weight = [](const Rational& q) -> json {
        if (denominator(q) == 1) return json::parse(numerator(q).str());
        return to_string(q);
    };
    json j;
    j["name"] = g.name;
    j["vertices"] = json::array();
    for (const auto& v : g.vertices) j["vertices"].push_back({{"id", v.id}, {"pos", {v.pos.x, v.pos.y}}});
    j["edges"] = json::array();
    for (const auto& e : g.edges)
        j["edges"].push_back({{"tail", g.vertices[e.tail].id},
                              {"head", g.vertices[e.head].id},
                              {"offset", {e.offset.x, e.offset.y}},
                              {"w_fwd", weight(e.w_fwd)},
                              {"w_bwd", weight(e.w_bwd)}});
    return j.dump(2);
}

PeriodicGraph drifted_grid(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    PeriodicGraph g;
    g.name = "drifted";
    g.vertices.push_back({"v", {0.5, 0.5}});
    g.edges.push_back({0, 0, {1, 0}, a, c});
    g.edges.push_back({0, 0, {0, 1}, d, b});
    return g;
}

void finish_embedding(EmbeddedGraph& g) {
    const int nd = g.num_darts();
    g.rot_index.assign(nd, -1);
    for (const auto& r : g.rotation)
        for (size_t k = 0; k < r.size(); ++k) {
            if (g.rot_index[r[k]] != -1) throw Error("broken rotation system: dart listed twice");
            g.rot_index[r[k]] = int(k);
        }
    for (int d = 0; d < nd; ++d)
        if (g.rot_index[d] == -1 || g.rotation[g.tail(d)][g.rot_index[d]] != d)
            throw Error("broken rotation system: dart " + std::to_string(d) + " misplaced");
    g.faces.clear();
    g.dart_face.assign(nd, -1);
    g.dart_lift.assign(nd, IVec2{});
    for (int d0 = 0; d0 < nd; ++d0) {
        if (g.dart_face[d0] != -1) continue;
        const int f = g.num_faces();
        std::vector<int> cyc;
        IVec2 lift;
        int d = d0;
        do {
            if (g.dart_face[d] != -1) throw Error("broken rotation system: face walk does not close");
            g.dart_face[d] = f;
            g.dart_lift[d] = lift;
            cyc.push_back(d);
            lift += g.wrap(d);
            d = g.face_next(d);
        } while (d != d0);
        if (!lift.zero()) throw Error("broken rotation system: a face wraps around the torus");
        g.faces.push_back(std::move(cyc));
    }
    g.face_center.assign(g.faces.size(), Vec2{});
    for (size_t f = 0; f < g.faces.size(); ++f) {
        Vec2 acc;
        for (int d : g.faces[f]) {
            Vec2 o = g.origin_in_face(d);
            acc += o;
            acc += o + g.vec(d);
        }
        g.face_center[f] = (0.5 / double(g.faces[f].size())) * acc;
    }
}

TorusGraph build_quotient(const PeriodicGraph& g, int n) {
    if (n < 1) throw Error("build_quotient: n must be positive");
    const int nv = int(g.vertices.size()), ne = int(g.edges.size());
    auto rot = base_rotation(g);
    TorusGraph t;
    t.name = g.name;
    t.period = n;
    auto cell_index = [n](IVec2 c) { return (c.y * n + c.x); };
    auto vid = [&](int v, IVec2 c) { return cell_index(c) * nv + v; };
    for (int cy = 0; cy < n; ++cy)
        for (int cx = 0; cx < n; ++cx)
            for (int v = 0; v < nv; ++v) {
                t.pos.push_back(g.vertices[v].pos + Vec2{double(cx), double(cy)});
                t.base_vertex.push_back(v);
                t.vertex_cell.push_back({cx, cy});
            }
    for (int cy = 0; cy < n; ++cy)
        for (int cx = 0; cx < n; ++cx)
            for (int i = 0; i < ne; ++i) {
                const auto& e = g.edges[i];
                IVec2 c{cx, cy};
                IVec2 h = c + e.offset;
                IVec2 wrap{floor_div(h.x, n), floor_div(h.y, n)};
                IVec2 hc = h - n * wrap;
                EdgeRecord r;
                r.tail = vid(e.tail, c);
                r.head = vid(e.head, hc);
                r.w_fwd = e.w_fwd;
                r.w_bwd = e.w_bwd;
                r.vec = head_point(g, e) - g.vertices[e.tail].pos;
                r.wrap = wrap;
                r.base_edge = i;
                r.cell = c;
                t.edges.push_back(r);
            }
    t.rotation.assign(t.pos.size(), {});
    for (int cy = 0; cy < n; ++cy)
        for (int cx = 0; cx < n; ++cx)
            for (int v = 0; v < nv; ++v) {
                IVec2 c{cx, cy};
                auto& out = t.rotation[vid(v, c)];
                for (int bd : rot[v]) {
                    const auto& e = g.edges[bd >> 1];
                    if ((bd & 1) == 0) {
                        out.push_back(2 * (cell_index(c) * ne + (bd >> 1)));
                    } else {
                        IVec2 tc{mod(c.x - e.offset.x, n), mod(c.y - e.offset.y, n)};
                        out.push_back(2 * (cell_index(tc) * ne + (bd >> 1)) + 1);
                    }
                }
            }
    finish_embedding(t);
    if (t.euler_characteristic() != 0) throw Error("broken rotation system: torus Euler characteristic is not 0");
    return t;
}

WiredGraph build_wired(const PeriodicGraph& g, int n, int root_dual_choice) {
    if (n < 2) throw Error("build_wired: n must be at least 2");
    const int nv = int(g.vertices.size()), ne = int(g.edges.size());
    auto rot = base_rotation(g);
    auto interior = [n](IVec2 c) { return c.x >= 1 && c.y >= 1 && c.x <= n - 2 && c.y <= n - 2; };
    WiredGraph w;
    w.n = n;
    EmbeddedGraph& t = w.graph;
    t.name = g.name + " (wired)";
    std::map<std::pair<int, IVec2>, int> vid;
    for (int cy = 1; cy <= n - 2; ++cy)
        for (int cx = 1; cx <= n - 2; ++cx)
            for (int v = 0; v < nv; ++v) {
                vid[{v, {cx, cy}}] = int(t.pos.size());
                t.pos.push_back(g.vertices[v].pos + Vec2{double(cx), double(cy)});
                t.base_vertex.push_back(v);
                t.vertex_cell.push_back({cx, cy});
            }
    const int root = int(t.pos.size());
    t.root = root;
    t.pos.push_back(Vec2{0.5 * n, 0.5 * n});
    t.base_vertex.push_back(-1);
    t.vertex_cell.push_back({-1, -1});

    int reach = 1;
    for (const auto& e : g.edges) reach = std::max({reach, std::abs(e.offset.x), std::abs(e.offset.y)});
    // (base edge, tail cell) -> (wired edge, stored reversed)
    std::map<std::pair<int, IVec2>, std::pair<int, bool>> copy;
    for (int cy = 1 - reach; cy <= n - 2 + reach; ++cy)
        for (int cx = 1 - reach; cx <= n - 2 + reach; ++cx)
            for (int i = 0; i < ne; ++i) {
                const auto& e = g.edges[i];
                IVec2 c{cx, cy}, hc = c + e.offset;
                bool ti = interior(c), hi = interior(hc);
                if (!ti && !hi) continue;
                EdgeRecord r;
                r.base_edge = i;
                r.cell = c;
                Vec2 tp = g.vertices[e.tail].pos + Vec2::of(c), hp = g.vertices[e.head].pos + Vec2::of(hc);
                bool reversed = false;
                if (ti && hi) {
                    r.tail = vid.at({e.tail, c});
                    r.head = vid.at({e.head, hc});
                    r.w_fwd = e.w_fwd;
                    r.w_bwd = e.w_bwd;
                    r.vec = hp - tp;
                } else if (ti) {
                    r.tail = vid.at({e.tail, c});
                    r.head = root;
                    r.w_fwd = e.w_fwd;
                    r.w_bwd = e.w_bwd;
                    r.vec = hp - tp;
                    r.stub_point = hp;
                } else {
                    reversed = true;
                    r.tail = vid.at({e.head, hc});
                    r.head = root;
                    r.w_fwd = e.w_bwd;
                    r.w_bwd = e.w_fwd;
                    r.vec = tp - hp;
                    r.stub_point = tp;
                }
                copy[{i, c}] = {int(t.edges.size()), reversed};
                t.edges.push_back(r);
            }
    t.rotation.assign(t.pos.size(), {});
    for (int v = 0; v < root; ++v) {
        int b = t.base_vertex[v];
        IVec2 c = t.vertex_cell[v];
        for (int bd : rot[b]) {
            const auto& e = g.edges[bd >> 1];
            if ((bd & 1) == 0) {
                auto [id, rev] = copy.at({bd >> 1, c});
                t.rotation[v].push_back(2 * id + (rev ? 1 : 0));
            } else {
                auto [id, rev] = copy.at({bd >> 1, c - e.offset});
                t.rotation[v].push_back(2 * id + (rev ? 0 : 1));
            }
        }
    }
    // Around the glued vertex the stubs appear clockwise as seen from the centre.
    Vec2 centre{0, 0};
    for (int v = 0; v < root; ++v) centre += t.pos[v];
    if (root > 0) centre = (1.0 / root) * centre;
    std::vector<std::pair<double, int>> stubs;
    for (int i = 0; i < t.num_edges(); ++i)
        if (t.edges[i].head == root) {
            Vec2 p = t.edges[i].stub_point + 1e-3 * (t.pos[t.edges[i].tail] - t.edges[i].stub_point);
            stubs.push_back({-std::atan2(p.y - centre.y, p.x - centre.x), 2 * i + 1});
        }
    std::sort(stubs.begin(), stubs.end());
    for (auto& [a, d] : stubs) t.rotation[root].push_back(d);
    t.pos[root] = centre;
    finish_embedding(t);
    if (t.euler_characteristic() != 2)
        throw Error("broken rotation system: wired graph Euler characteristic is " +
                    std::to_string(t.euler_characteristic()));
    std::set<int> at_root;
    for (int d : t.rotation[root]) at_root.insert(t.dart_face[d]);
    if (root_dual_choice < 0 || root_dual_choice >= int(at_root.size()))
        throw Error("build_wired: root dual choice out of range");
    w.root_dual = *std::next(at_root.begin(), root_dual_choice);
    return w;
}

EmbeddedGraph build_dual(const EmbeddedGraph& h) {
    EmbeddedGraph d;
    d.name = h.name + " (dual)";
    d.period = h.period;
    d.pos = h.face_center;
    d.base_vertex.assign(h.num_faces(), -1);
    d.vertex_cell.assign(h.num_faces(), IVec2{});
    for (int e = 0; e < h.num_edges(); ++e) {
        int l = 2 * e, r = 2 * e + 1;
        auto mid = [&](int dd) { return h.origin_in_face(dd) + 0.5 * h.vec(dd) - h.face_center[h.dart_face[dd]]; };
        EdgeRecord rec;
        rec.tail = h.dart_face[l];
        rec.head = h.dart_face[r];
        rec.w_fwd = 1;
        rec.w_bwd = 1;
        rec.vec = mid(l) - mid(r);
        rec.wrap = h.midpoint_jump_in_face(l) - h.midpoint_jump_in_face(r);
        rec.base_edge = h.edges[e].base_edge;
        rec.cell = h.edges[e].cell;
        d.edges.push_back(rec);
    }
    d.rotation = h.faces;
    finish_embedding(d);
    return d;
}

DoubleGraph build_double(const EmbeddedGraph& host, const std::vector<int>& removed_blacks) {
    DoubleGraph g;
    g.host = host;
    g.num_primal = host.num_vertices();
    g.num_dual = host.num_faces();
    g.num_white = host.num_edges();
    const int P = g.num_primal;
    g.half.resize(4 * size_t(g.num_white));
    for (int e = 0; e < g.num_white; ++e) {
        const auto& r = host.edges[e];
        auto dual_vec = [&](int d) {
            return host.origin_in_face(d) + 0.5 * host.vec(d) - host.face_center[host.dart_face[d]];
        };
        g.half[4 * e + 0] = {r.tail, e, Role::Tail, r.w_fwd, 0.5 * r.vec, {}, 2 * e};
        g.half[4 * e + 1] = {r.head, e, Role::Head, r.w_bwd, -0.5 * r.vec, -r.wrap, 2 * e + 1};
        g.half[4 * e + 2] = {P + host.dart_face[2 * e], e, Role::Left, Rational(1), dual_vec(2 * e),
                             host.midpoint_jump_in_face(2 * e), 2 * e};
        g.half[4 * e + 3] = {P + host.dart_face[2 * e + 1], e, Role::Right, Rational(1), dual_vec(2 * e + 1),
                             host.midpoint_jump_in_face(2 * e + 1), 2 * e + 1};
    }
    g.black_rotation.assign(g.num_black(), {});
    for (int v = 0; v < P; ++v)
        for (int d : host.rotation[v]) g.black_rotation[v].push_back(4 * (d >> 1) + (EmbeddedGraph::forward(d) ? 0 : 1));
    for (int f = 0; f < g.num_dual; ++f)
        for (int d : host.faces[f]) g.black_rotation[P + f].push_back(4 * (d >> 1) + (EmbeddedGraph::forward(d) ? 2 : 3));
    g.white_rotation.resize(g.num_white);
    for (int e = 0; e < g.num_white; ++e) g.white_rotation[e] = {4 * e + 1, 4 * e + 2, 4 * e + 0, 4 * e + 3};

    g.removed.assign(g.num_black(), 0);
    for (int b : removed_blacks) g.removed.at(b) = 1;
    g.row_of_black.assign(g.num_black(), -1);
    for (int b = 0; b < g.num_black(); ++b)
        if (!g.removed[b]) {
            g.row_of_black[b] = int(g.black_of_row.size());
            g.black_of_row.push_back(b);
        }

    // Trace the faces of the double graph. Double darts: 2h is black -> white, 2h + 1 the reverse.
    const int nh = int(g.half.size());
    std::vector<int> black_pos(nh), white_pos(nh);
    for (const auto& r : g.black_rotation)
        for (size_t k = 0; k < r.size(); ++k) black_pos[r[k]] = int(k);
    for (int h = 0; h < nh; ++h) white_pos[h] = (h % 4 == 1) ? 0 : (h % 4 == 2) ? 1 : (h % 4 == 0) ? 2 : 3;
    auto next = [&](int dd) {
        int h = dd >> 1;
        if ((dd & 1) == 0) {
            const auto& r = g.white_rotation[g.half[h].white];
            return 2 * r[(white_pos[h] + 3) % 4] + 1;
        }
        const auto& r = g.black_rotation[g.half[h].black];
        return 2 * r[(black_pos[h] + r.size() - 1) % r.size()];
    };
    std::vector<int> seen(2 * nh, -1);
    g.quad_left.assign(nh, -1);
    g.quad_right.assign(nh, -1);
    for (int start = 0; start < 2 * nh; start += 2) {
        if (seen[start] != -1) continue;
        std::vector<int> walk;
        for (int dd = start; walk.empty() || dd != start; dd = next(dd)) {
            if (seen[dd] != -1 || walk.size() > 4) throw Error("double graph face is not a quadrilateral");
            seen[dd] = int(g.quads.size());
            walk.push_back(dd);
        }
        if (walk.size() != 4) throw Error("double graph face is not a quadrilateral");
        Quad q;
        for (int i = 0; i < 4; ++i) q.sides[i] = walk[i] >> 1;
        const auto& H = g.half;
        q.blacks = {H[q.sides[0]].black, H[q.sides[1]].black};
        if (H[q.sides[2]].black != q.blacks[1] || H[q.sides[3]].black != q.blacks[0] ||
            H[q.sides[0]].white != H[q.sides[1]].white || H[q.sides[2]].white != H[q.sides[3]].white)
            throw Error("double graph face is not a quadrilateral");
        IVec2 b1 = H[q.sides[0]].jump - H[q.sides[1]].jump;
        q.lift = {IVec2{}, b1, b1, IVec2{}};
        if (!(b1 + H[q.sides[2]].jump - H[q.sides[3]].jump).zero())
            throw Error("double graph face wraps around the torus");
        q.removed = g.removed[q.blacks[0]] || g.removed[q.blacks[1]];
        g.quad_left[q.sides[0]] = g.quad_left[q.sides[2]] = int(g.quads.size());
        g.quad_right[q.sides[1]] = g.quad_right[q.sides[3]] = int(g.quads.size());
        g.quads.push_back(q);
    }
    return g;
}

DoubleGraph build_double(const WiredGraph& w) {
    return build_double(w.graph, {w.graph.root, w.graph.num_vertices() + w.root_dual});
}

DualPaths choose_dual_paths(const TorusGraph& t, int start_x, int start_y) {
    if (t.period <= 0) throw Error("choose_dual_paths: host is not a torus");
    const int nf = t.num_faces();
    auto dual_wrap = [&](int d) { return t.midpoint_jump_in_face(d) - t.midpoint_jump_in_face(EmbeddedGraph::twin(d)); };
    std::vector<std::vector<int>> out(nf);
    for (int f = 0; f < nf; ++f) {
        out[f] = t.faces[f];
        std::sort(out[f].begin(), out[f].end());
    }
    const int bound = 4;
    auto search = [&](int f0, IVec2 target) -> std::vector<int> {
        using State = std::pair<int, IVec2>;
        std::map<State, std::pair<State, int>> parent;
        std::deque<State> q{{f0, {}}};
        parent[{f0, {}}] = {{-1, {}}, -1};
        while (!q.empty()) {
            State s = q.front();
            q.pop_front();
            for (int d : out[s.first]) {
                State n{t.dart_face[EmbeddedGraph::twin(d)], s.second + dual_wrap(d)};
                if (std::abs(n.second.x) > bound || std::abs(n.second.y) > bound || parent.count(n)) continue;
                parent[n] = {s, d};
                if (n.first == f0 && n.second == target) {
                    std::vector<int> path;
                    for (State c = n; parent[c].second != -1; c = parent[c].first) path.push_back(parent[c].second);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                q.push_back(n);
            }
        }
        return {};
    };
    auto simple = [&](const std::vector<int>& p) {
        std::set<int> faces;
        for (int d : p)
            if (!faces.insert(t.dart_face[d]).second) return false;
        return !p.empty();
    };
    DualPaths paths;
    const IVec2 targets[2] = {{1, 0}, {0, 1}};
    const int starts[2] = {start_x, start_y};
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < nf && paths.gamma[k].empty(); ++i) {
            auto p = search((starts[k] + i) % nf, targets[k]);
            if (simple(p)) paths.gamma[k] = p;
        }
        if (paths.gamma[k].empty()) throw Error("choose_dual_paths: no simple dual cycle found");
    }
    paths.cross.assign(t.num_edges(), {0, 0});
    for (int k = 0; k < 2; ++k)
        for (int d : paths.gamma[k]) paths.cross[d >> 1][k] += EmbeddedGraph::forward(d) ? -1 : 1;
    return paths;
}

}  // namespace dimers
