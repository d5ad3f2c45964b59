#include "dimers/temperley.hpp"

#include <algorithm>
#include <functional>

namespace dimers {

IVec2 dual_wrap(const EmbeddedGraph& host, int d) {
    return host.midpoint_jump_in_face(d) - host.midpoint_jump_in_face(EmbeddedGraph::twin(d));
}

int dual_head(const EmbeddedGraph& host, int d) { return host.dart_face[EmbeddedGraph::twin(d)]; }

namespace {

// Cycles of a functional graph given by out[] and a successor map.
std::vector<ForestCycle> cycles(const std::vector<int>& out, const std::function<int(int)>& head,
                                const std::function<IVec2(int)>& wrap) {
    const int n = int(out.size());
    std::vector<int> state(n, 0);  // 0 new, 1 on current walk, 2 done
    std::vector<ForestCycle> found;
    for (int s = 0; s < n; ++s) {
        std::vector<int> walk;
        int v = s;
        while (v >= 0 && state[v] == 0) {
            state[v] = 1;
            walk.push_back(v);
            v = out[v] < 0 ? -1 : head(out[v]);
        }
        if (v >= 0 && state[v] == 1) {
            ForestCycle c;
            auto it = std::find(walk.begin(), walk.end(), v);
            for (; it != walk.end(); ++it) {
                c.darts.push_back(out[*it]);
                c.cls += wrap(out[*it]);
            }
            found.push_back(std::move(c));
        }
        for (int x : walk) state[x] = 2;
    }
    return found;
}

bool parallel(IVec2 a, IVec2 b) { return a.x * b.y - a.y * b.x == 0; }

// Torus validity: no contractible cycle, all cycles parallel.
bool valid_cycles(const std::vector<ForestCycle>& cs) {
    for (const auto& c : cs)
        if (c.cls.zero() || !parallel(c.cls, cs[0].cls)) return false;
    return true;
}

}  // namespace

std::vector<ForestCycle> primal_cycles(const EmbeddedGraph& host, const OrientedForest& f) {
    return cycles(f.out, [&](int d) { return host.head(d); }, [&](int d) { return host.wrap(d); });
}

std::vector<ForestCycle> dual_cycles(const EmbeddedGraph& host, const OrientedForest& f) {
    return cycles(f.out, [&](int d) { return dual_head(host, d); }, [&](int d) { return dual_wrap(host, d); });
}

void check_pair(const DoubleGraph& d, const OcrsfPair& p) {
    const auto& host = d.host;
    if (int(p.primal.out.size()) != host.num_vertices() || int(p.dual.out.size()) != host.num_faces())
        throw Error("check_pair: forest sizes do not match the graph");
    std::vector<int> used(host.num_edges(), 0);
    for (int v = 0; v < host.num_vertices(); ++v) {
        int dart = p.primal.out[v];
        if ((dart < 0) != bool(d.removed[v])) throw Error("check_pair: root set mismatch");
        if (dart < 0) continue;
        if (host.tail(dart) != v) throw Error("check_pair: primal dart does not leave its vertex");
        ++used[dart >> 1];
    }
    for (int f = 0; f < host.num_faces(); ++f) {
        int dart = p.dual.out[f];
        if ((dart < 0) != bool(d.removed[d.num_primal + f])) throw Error("check_pair: dual root set mismatch");
        if (dart < 0) continue;
        if (host.dart_face[dart] != f) throw Error("check_pair: dual dart does not leave its face");
        ++used[dart >> 1];
    }
    for (int u : used)
        if (u > 1) throw Error("check_pair: forests cross");
    auto pc = primal_cycles(host, p.primal), dc = dual_cycles(host, p.dual);
    if (host.period == 0) {
        if (!pc.empty() || !dc.empty()) throw Error("check_pair: wired forest has a cycle");
        return;
    }
    if (pc.size() != dc.size()) throw Error("check_pair: component counts differ");
    if (pc.empty() || !valid_cycles(pc) || !valid_cycles(dc) || !parallel(pc[0].cls, dc[0].cls))
        throw Error("check_pair: contractible or non-parallel cycle");
}

DimerConfig forest_to_dimer(const DoubleGraph& d, const OcrsfPair& p) {
    check_pair(d, p);
    DimerConfig m;
    m.weight = 1;
    for (int dart : p.primal.out)
        if (dart >= 0) {
            int h = 4 * (dart >> 1) + (EmbeddedGraph::forward(dart) ? 0 : 1);
            m.halves.push_back(h);
            m.weight *= d.half[h].weight;
        }
    for (int dart : p.dual.out)
        if (dart >= 0) m.halves.push_back(4 * (dart >> 1) + (EmbeddedGraph::forward(dart) ? 2 : 3));
    std::sort(m.halves.begin(), m.halves.end());
    return m;
}

OcrsfPair dimer_to_forest(const DoubleGraph& d, const DimerConfig& m) {
    OcrsfPair p;
    p.primal.out.assign(d.num_primal, -1);
    p.dual.out.assign(d.num_dual, -1);
    p.weight = 1;
    for (int h : m.halves) {
        const auto& he = d.half[h];
        int& slot = d.is_dual(he.black) ? p.dual.out[he.black - d.num_primal] : p.primal.out[he.black];
        if (slot >= 0) throw Error("dimer_to_forest: black vertex matched twice");
        slot = he.dart;
        p.weight *= he.weight;
    }
    check_pair(d, p);
    return p;
}

std::vector<OrientedForest> duals_of(const TorusGraph& t, const OrientedForest& f) {
    std::vector<char> blocked(t.num_edges(), 0);
    for (int dart : f.out) blocked[dart >> 1] = 1;
    auto pc = primal_cycles(t, f);
    std::vector<OrientedForest> out;
    OrientedForest cur{std::vector<int>(t.num_faces(), -1)};
    std::function<void(int)> rec = [&](int face) {
        if (face == t.num_faces()) {
            auto dc = dual_cycles(t, cur);
            if (dc.size() == pc.size() && valid_cycles(dc) && parallel(dc[0].cls, pc[0].cls)) out.push_back(cur);
            return;
        }
        for (int dart : t.faces[face]) {
            if (blocked[dart >> 1]) continue;
            cur.out[face] = dart;
            rec(face + 1);
        }
        cur.out[face] = -1;
    };
    rec(0);
    return out;
}

std::vector<DimerConfig> enumerate_dimers(const DoubleGraph& d, long long cap) {
    std::vector<std::vector<int>> options(d.num_white);
    for (int e = 0; e < d.num_white; ++e)
        for (int r = 0; r < 4; ++r)
            if (!d.removed[d.half[4 * e + r].black]) options[e].push_back(4 * e + r);
    std::vector<DimerConfig> out;
    if (d.num_rows() != d.num_white) return out;
    std::vector<char> taken(d.num_black(), 0);
    std::vector<int> chosen;
    std::function<void(int, Rational)> rec = [&](int e, Rational weight) {
        if (e == d.num_white) {
            if ((long long)out.size() >= cap) throw Error("enumerate_dimers: cap exceeded");
            out.push_back({chosen, weight});
            return;
        }
        for (int h : options[e]) {
            int b = d.half[h].black;
            if (taken[b]) continue;
            taken[b] = 1;
            chosen.push_back(h);
            rec(e + 1, weight * d.half[h].weight);
            chosen.pop_back();
            taken[b] = 0;
        }
    };
    rec(0, Rational(1));
    return out;
}

std::vector<OcrsfPair> enumerate_ocrsf_pairs(const TorusGraph& t, long long cap) {
    std::vector<OcrsfPair> out;
    OrientedForest f{std::vector<int>(t.num_vertices(), -1)};
    std::function<void(int)> rec = [&](int v) {
        if (v == t.num_vertices()) {
            auto pc = primal_cycles(t, f);
            if (!valid_cycles(pc)) return;
            Rational w = 1;
            for (int dart : f.out) w *= t.weight(dart);
            for (auto& dual : duals_of(t, f)) {
                if ((long long)out.size() >= cap) throw Error("enumerate_ocrsf_pairs: cap exceeded");
                out.push_back({f, std::move(dual), w});
            }
            return;
        }
        for (int dart : t.rotation[v]) {
            f.out[v] = dart;
            rec(v + 1);
        }
        f.out[v] = -1;
    };
    rec(0);
    return out;
}

}  // namespace dimers
