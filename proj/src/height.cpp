#include "dimers/height.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>

#include <json.hpp>

namespace dimers {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;
constexpr double closedness_tol = 1e-9;
constexpr double integer_tol = 1e-6;

// Position of h among the sides of its left quad (even) and right quad (odd).
struct SidePositions {
    std::vector<int> left, right;
};

SidePositions side_positions(const DoubleGraph& d) {
    SidePositions s{std::vector<int>(d.half.size(), -1), std::vector<int>(d.half.size(), -1)};
    for (size_t q = 0; q < d.quads.size(); ++q)
        for (int i = 0; i < 4; ++i) (i % 2 == 0 ? s.left : s.right)[d.quads[q].sides[i]] = i;
    return s;
}

// Diagonal of quad q seen from the black of side i: towards the other black.
Vec2 diagonal(const DoubleGraph& d, int q, int i) {
    const auto& s = d.quads[q].sides;
    int partner = i ^ 1;
    return d.half[s[i]].vec - d.half[s[partner]].vec;
}

nlohmann::json rational_json(const Rational& r) {
    if (denominator(r) == 1) {
        auto text = to_string(r);
        return nlohmann::json::parse(text);
    }
    return to_string(r);
}

}  // namespace

double HeightFunction::at(int q, IVec2 t) const {
    IVec2 c = change.value_or(IVec2{});
    IVec2 dt = t - copy[q];
    return height[q] + two_pi * (c.x * dt.x + c.y * dt.y);
}

double crossing_angle(const DoubleGraph& d, int h) {
    auto side_of = [&](int q, int parity) {
        for (int i = parity; i < 4; i += 2)
            if (d.quads[q].sides[i] == h) return i;
        throw Error("crossing_angle: half-edge missing from its quad");
    };
    Vec2 v = d.half[h].vec;
    Vec2 diag_r = diagonal(d, d.quad_right[h], side_of(d.quad_right[h], 1));
    Vec2 diag_l = diagonal(d, d.quad_left[h], side_of(d.quad_left[h], 0));
    return ccw_angle(diag_r, v) + ccw_angle(v, diag_l);
}

HeightFunction height_function(const DoubleGraph& d, const DimerConfig& m, int base, Propagation order) {
    const int nq = int(d.quads.size());
    if (base < 0 || base >= nq || d.quads[base].removed) throw Error("height_function: bad base quad");
    std::vector<char> matched(d.half.size(), 0);
    for (int h : m.halves) matched[h] = 1;
    auto pos = side_positions(d);

    struct Link {
        int from, to;
        double inc;
        IVec2 shift;
    };
    std::vector<Link> links;
    std::vector<std::vector<int>> adj(nq);
    for (size_t h = 0; h < d.half.size(); ++h) {
        if (matched[h] || d.removed[d.half[h].black]) continue;
        int qr = d.quad_right[h], ql = d.quad_left[h];
        if (d.quads[qr].removed || d.quads[ql].removed) continue;
        IVec2 shift = d.quads[qr].lift[pos.right[h]] - d.quads[ql].lift[pos.left[h]];
        double inc = crossing_angle(d, int(h));
        adj[qr].push_back(int(links.size()));
        links.push_back({qr, ql, inc, shift});
        adj[ql].push_back(int(links.size()));
        links.push_back({ql, qr, -inc, -shift});
    }

    HeightFunction hf;
    hf.base = base;
    hf.height.assign(nq, std::numeric_limits<double>::quiet_NaN());
    hf.copy.assign(nq, IVec2{});
    std::vector<char> seen(nq, 0);
    std::deque<int> frontier{base};
    seen[base] = 1;
    hf.height[base] = 0;
    while (!frontier.empty()) {
        int q;
        if (order == Propagation::Bfs) {
            q = frontier.front();
            frontier.pop_front();
        } else {
            q = frontier.back();
            frontier.pop_back();
        }
        for (int li : adj[q]) {
            const auto& l = links[li];
            if (seen[l.to]) continue;
            seen[l.to] = 1;
            hf.height[l.to] = hf.height[q] + l.inc;
            hf.copy[l.to] = hf.copy[q] + l.shift;
            frontier.push_back(l.to);
        }
    }

    // Each link gives 2 pi <change, D> = residual, with D the copy mismatch.
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    bool periodic = false;
    for (const auto& l : links) {
        if (!seen[l.from]) continue;
        IVec2 D = hf.copy[l.from] + l.shift - hf.copy[l.to];
        if (D.zero()) continue;
        periodic = true;
        double r = (hf.height[l.from] + l.inc - hf.height[l.to]) / two_pi;
        a11 += double(D.x) * D.x;
        a12 += double(D.x) * D.y;
        a22 += double(D.y) * D.y;
        b1 += D.x * r;
        b2 += D.y * r;
    }
    IVec2 c;
    if (periodic) {
        double det = a11 * a22 - a12 * a12;
        if (std::abs(det) < 0.5) throw Error("height_function: period constraints are degenerate");
        double cx = (a22 * b1 - a12 * b2) / det, cy = (a11 * b2 - a12 * b1) / det;
        c = {int(std::lround(cx)), int(std::lround(cy))};
        if (std::abs(cx - c.x) > integer_tol || std::abs(cy - c.y) > integer_tol)
            throw Error("height_function: non-integer height change");
        hf.change = c;
    }
    for (const auto& l : links) {
        if (!seen[l.from]) continue;
        IVec2 D = hf.copy[l.from] + l.shift - hf.copy[l.to];
        double r = hf.height[l.from] + l.inc - hf.height[l.to] - two_pi * (c.x * D.x + c.y * D.y);
        hf.closedness_error = std::max(hf.closedness_error, std::abs(r));
    }
    if (hf.closedness_error > closedness_tol) throw Error("height_function: propagation inconsistency");
    return hf;
}

IVec2 height_change(const DoubleGraph& d, const DimerConfig& m) {
    auto hf = height_function(d, m);
    if (!hf.change) throw Error("height_change: configuration is not periodic");
    return *hf.change;
}

IVec2 normalize_class(IVec2 c) { return (c.x < 0 || (c.x == 0 && c.y < 0)) ? -c : c; }

HomologyData homology_data(const EmbeddedGraph& host, const OcrsfPair& p) {
    auto pc = primal_cycles(host, p.primal);
    auto dc = dual_cycles(host, p.dual);
    if (pc.empty()) throw Error("homology_data: forest has no cycle");
    HomologyData h;
    h.mn = normalize_class(pc[0].cls);
    if (std::gcd(std::abs(h.mn.x), std::abs(h.mn.y)) != 1) throw Error("homology_data: class is not primitive");
    h.k = int(pc.size());
    for (const auto& c : pc) {
        if (normalize_class(c.cls) != h.mn) throw Error("homology_data: non-parallel cycles");
        h.k1 += c.cls == h.mn;
    }
    for (const auto& c : dc) {
        if (normalize_class(c.cls) != h.mn) throw Error("homology_data: non-parallel cycles");
        h.k2 += c.cls == h.mn;
    }
    return h;
}

IVec2 predicted_height_change(const HomologyData& h) {
    int s = h.k - h.k1 - h.k2;
    return {-h.mn.y * s, h.mn.x * s};
}

std::string HeightReport::to_json() const {
    nlohmann::json j;
    j["total"] = total;
    j["passed"] = passed;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : failures)
        j["failures"].push_back(
            {{"config_id", f.config}, {"expected", {f.expected.x, f.expected.y}}, {"got", {f.got.x, f.got.y}}});
    return j.dump();
}

HeightReport height_homology_report(const DoubleGraph& d, long long cap) {
    HeightReport r;
    auto ms = enumerate_dimers(d, cap);
    for (size_t i = 0; i < ms.size(); ++i) {
        auto expected = predicted_height_change(homology_data(d.host, dimer_to_forest(d, ms[i])));
        auto got = height_change(d, ms[i]);
        ++r.total;
        if (got == expected)
            ++r.passed;
        else
            r.failures.push_back({int(i), expected, got});
    }
    return r;
}

RationalPoly height_expansion(const DoubleGraph& d, long long cap) {
    RationalPoly p;
    for (const auto& m : enumerate_dimers(d, cap)) {
        IVec2 h = height_change(d, m);
        int parity = (h.x * h.y + h.x + h.y) & 1;
        p.add(-h, parity ? -m.weight : m.weight);
    }
    return p;
}

double winding(const std::vector<Vec2>& directions) {
    double total = 0;
    for (size_t i = 1; i < directions.size(); ++i)
        total += std::atan2(cross(directions[i - 1], directions[i]), dot(directions[i - 1], directions[i]));
    return total;
}

double branch_winding(const EmbeddedGraph& g, const std::vector<int>& darts) {
    std::vector<Vec2> dirs;
    for (size_t i = 0; i < darts.size(); ++i) {
        if (i > 0 && g.head(darts[i - 1]) != g.tail(darts[i])) throw Error("branch_winding: darts are not consecutive");
        dirs.push_back(g.vec(darts[i]));
    }
    return winding(dirs);
}

double branch_winding(const EmbeddedGraph& g, const std::vector<int>& vertices, bool) {
    std::vector<int> darts;
    for (size_t i = 1; i < vertices.size(); ++i) {
        int found = -1, count = 0;
        for (int dart : g.rotation.at(vertices[i - 1]))
            if (g.head(dart) == vertices[i]) found = dart, ++count;
        if (count != 1) throw Error("branch_winding: vertices are not joined by a unique edge");
        darts.push_back(found);
    }
    return branch_winding(g, darts);
}

KpwCheck check_kpw(const DoubleGraph& d, const DimerConfig& m) {
    const auto& g = d.host;
    auto pair = dimer_to_forest(d, m);
    auto pos = side_positions(d);
    int base = 0;
    while (base < int(d.quads.size()) && d.quads[base].removed) ++base;
    auto hf = height_function(d, m, base);
    const int n = g.num_vertices();
    // h^T(v) = h(f) - alpha(f), f the quad left of v's matched half-edge.
    std::vector<double> ht(n, std::numeric_limits<double>::quiet_NaN());
    for (int v = 0; v < n; ++v) {
        int dart = pair.primal.out[v];
        if (dart < 0) continue;
        int h = 4 * (dart >> 1) + (EmbeddedGraph::forward(dart) ? 0 : 1);
        int q = d.quad_left[h];
        if (d.quads[q].removed) continue;
        double alpha = ccw_angle(d.half[h].vec, diagonal(d, q, pos.left[h]));
        ht[v] = hf.height[q] - alpha;
    }
    KpwCheck r;
    for (int v = 0; v < n; ++v) {
        if (std::isnan(ht[v])) continue;
        std::vector<int> darts;
        for (int u = v; pair.primal.out[u] >= 0; u = g.head(pair.primal.out[u])) {
            darts.push_back(pair.primal.out[u]);
            if (darts.size() > 1 && !std::isnan(ht[u])) {
                double err = std::abs(branch_winding(g, darts) - (ht[u] - ht[v]));
                r.max_error = std::max(r.max_error, err);
                ++r.branches;
            }
        }
    }
    return r;
}

std::string config_dump_line(const DoubleGraph& d, const DimerConfig& m) {
    nlohmann::json j;
    j["edges"] = m.halves;
    j["weight"] = rational_json(m.weight);
    HomologyData h;
    if (d.host.period > 0) h = homology_data(d.host, dimer_to_forest(d, m));
    j["homology"] = {h.mn.x, h.mn.y};
    j["k"] = h.k;
    j["k1"] = h.k1;
    j["k2"] = h.k2;
    return j.dump();
}

}  // namespace dimers
