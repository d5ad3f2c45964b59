#include "dimers/phase.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "dimers/height.hpp"
#include "dimers/laplacian.hpp"
#include "dimers/temperley.hpp"

namespace dimers {

HeightSpectrum::HeightSpectrum(const PeriodicGraph& g, int n, long long cap) : n_(n) {
    auto t = torus_setup(g, n);
    for (const auto& m : enumerate_dimers(t.dg, cap)) weights_[height_change(t.dg, m)] += m.weight;
}

Vec2 HeightSpectrum::slope(Field b) const {
    std::vector<double> logw;
    for (const auto& [h, w] : weights_) logw.push_back(std::log(to_double(w)) - n_ * (b.bx * h.x + b.by * h.y));
    double top = *std::max_element(logw.begin(), logw.end());
    double total = 0;
    Vec2 acc;
    size_t i = 0;
    for (const auto& [h, w] : weights_) {
        double p = std::exp(logw[i++] - top);
        total += p;
        acc += p * Vec2{double(h.x), double(h.y)};
    }
    return (1.0 / (total * n_)) * acc;
}

std::array<Rational, 2> HeightSpectrum::exact_slope(const Rational& z, const Rational& w) const {
    Rational total = 0, sx = 0, sy = 0;
    for (const auto& [h, wt] : weights_) {
        Rational p = wt * ipow(z, -h.x) * ipow(w, -h.y);
        total += p;
        sx += p * h.x;
        sy += p * h.y;
    }
    total *= n_;
    return {sx / total, sy / total};
}

SlopeEstimate slope_estimate(const PeriodicGraph& g, Field b, const std::vector<int>& ns) {
    if (ns.empty()) throw Error("slope_estimate: no sizes");
    SlopeEstimate r;
    for (int n : ns) {
        HeightSpectrum s(g, n);
        SlopeTrend t{n, s.slope(b), std::nullopt};
        if (b.bx == 0 && b.by == 0) {
            t.exact = s.exact_slope(1, 1);
            t.slope = {to_double((*t.exact)[0]), to_double((*t.exact)[1])};
        }
        r.per_n.push_back(t);
    }
    r.slope = r.per_n.back().slope;
    if (r.per_n.size() > 1) {
        Vec2 d = r.slope - r.per_n[r.per_n.size() - 2].slope;
        r.error = std::max(std::abs(d.x), std::abs(d.y));
    }
    return r;
}

namespace {

// Generalized binomial coefficient, k >= 0.
Rational binom(int n, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

int root_order_at_11(const RationalPoly& p) {
    if (p.empty()) throw Error("root_order_at_11: zero polynomial");
    if (p(Rational(1), Rational(1)) != 0) throw Error("root_order_at_11: P(1,1) != 0");
    // Expand in s = z - 1, t = w - 1 degree by degree.
    for (int d = 1;; ++d) {
        for (int a = 0; a <= d; ++a) {
            Rational c = 0;
            for (const auto& [e, coef] : p.terms) c += coef * binom(e.x, a) * binom(e.y, d - a);
            if (c != 0) return d;
        }
    }
}

RationalPoly phase_polynomial(const PeriodicGraph& g) {
    auto t = torus_setup(g, 1);
    return laplacian_char_poly(t.dg.host, t.paths);
}

AmoebaPoint amoeba_membership(const LaurentPoly<double>& p, double x, double y, int m) {
    if (m < 8) throw Error("amoeba_membership: too few samples");
    std::vector<Complex> roots(m);
    for (int k = 0; k < m; ++k) roots[k] = std::polar(1.0, 2 * std::numbers::pi * k / m);
    struct Term {
        int i, j;
        Complex a;
    };
    std::vector<Term> terms;
    for (const auto& [e, c] : p.terms) terms.push_back({mod(e.x, m), mod(e.y, m), c * std::exp(e.x * x + e.y * y)});

    // vals[k * m + l] = P(e^{x + i phi_k}, e^{y + i theta_l})
    std::vector<Complex> vals(size_t(m) * m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            Complex v = 0;
            for (const auto& t : terms) v += t.a * roots[(t.i * k + t.j * l) % m];
            vals[size_t(k) * m + l] = v;
        }

    AmoebaPoint r;
    r.min_abs = std::abs(vals[0]);
    for (const auto& v : vals) r.min_abs = std::min(r.min_abs, std::abs(v));
    auto at = [&](int k, int l) { return vals[size_t(mod(k, m)) * m + mod(l, m)]; };
    // Rows through an exact zero have no winding number; they are skipped in the means.
    std::vector<int> wz, ww;
    double sz = 0, sw = 0;
    for (int l = 0; l < m; ++l) {
        double a = 0, b = 0;
        bool za = false, zb = false;
        for (int k = 0; k < m; ++k) {
            za = za || at(k, l) == 0.0;
            zb = zb || at(l, k) == 0.0;
            if (!za) a += std::arg(at(k + 1, l) / at(k, l));
            if (!zb) b += std::arg(at(l, k + 1) / at(l, k));
        }
        if (!za) {
            sz += a;
            wz.push_back(int(std::lround(a / (2 * std::numbers::pi))));
        }
        if (!zb) {
            sw += b;
            ww.push_back(int(std::lround(b / (2 * std::numbers::pi))));
        }
    }
    if (!wz.empty()) r.winding.x = sz / (2 * std::numbers::pi * wz.size());
    if (!ww.empty()) r.winding.y = sw / (2 * std::numbers::pi * ww.size());
    bool constant = int(wz.size()) == m && int(ww.size()) == m &&
                    std::all_of(wz.begin(), wz.end(), [&](int v) { return v == wz[0]; }) &&
                    std::all_of(ww.begin(), ww.end(), [&](int v) { return v == ww[0]; });
    r.inside = r.min_abs < amoeba_tolerance || !constant;
    if (!r.inside) {
        r.order = {wz[0], ww[0]};
        r.winding = {double(wz[0]), double(ww[0])};
    }
    return r;
}

std::string to_string(Phase p) {
    switch (p) {
    case Phase::Liquid: return "liquid";
    case Phase::Gaseous: return "gaseous";
    case Phase::Frozen: return "frozen";
    }
    return "?";
}

int ScanResult::bounded_components() const {
    return int(std::count_if(components.begin(), components.end(), [](const ComponentInfo& c) { return c.bounded; }));
}

namespace {

ScanResult raw_scan(const LaurentPoly<double>& p, const ScanGrid& g, bool parallel) {
    ScanResult r;
    r.grid = g;
    std::vector<AmoebaPoint> pts(size_t(g.nx) * g.ny);
    long long total = (long long)pts.size();
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long idx = 0; idx < total; ++idx) {
        int i = int(idx % g.nx), j = int(idx / g.nx);
        pts[idx] = amoeba_membership(p, g.x(i), g.y(j), g.samples);
    }

    r.points.resize(pts.size());
    for (size_t idx = 0; idx < pts.size(); ++idx) {
        auto& s = r.points[idx];
        s.bx = g.x(int(idx % g.nx));
        s.by = g.y(int(idx / g.nx));
        s.slope = pts[idx].slope();
        s.min_abs = pts[idx].min_abs;
    }

    // 4-connected flood fill over the complement.
    double diag = std::hypot((g.x1 - g.x0) / g.nx, (g.y1 - g.y0) / g.ny);
    for (int start = 0; start < int(pts.size()); ++start) {
        if (pts[start].inside || r.points[start].component >= 0) continue;
        ComponentInfo c;
        c.id = int(r.components.size());
        c.order = pts[start].order;
        std::vector<int> stack{start};
        r.points[start].component = c.id;
        while (!stack.empty()) {
            int idx = stack.back();
            stack.pop_back();
            int i = idx % g.nx, j = idx / g.nx;
            ++c.cells;
            if (pts[idx].order != c.order) c.slope_constant = false;
            if (i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1) c.touches_border = true;
            if (std::hypot(r.points[idx].bx, r.points[idx].by) <= diag) c.near_origin = true;
            const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
            for (int q = 0; q < 4; ++q) {
                int ni = i + di[q], nj = j + dj[q];
                if (ni < 0 || nj < 0 || ni >= g.nx || nj >= g.ny) continue;
                int nidx = nj * g.nx + ni;
                if (pts[nidx].inside || r.points[nidx].component >= 0) continue;
                r.points[nidx].component = c.id;
                stack.push_back(nidx);
            }
        }
        r.components.push_back(c);
    }
    return r;
}

}  // namespace

ScanResult phase_scan(const RationalPoly& p, const ScanGrid& grid, bool parallel) {
    auto pd = to_double(p);
    ScanResult r = raw_scan(pd, grid, parallel);

    bool candidates = std::any_of(r.components.begin(), r.components.end(),
                                  [](const ComponentInfo& c) { return !c.touches_border; });
    if (candidates) {
        // A component is bounded only if the same order stays off the border of the doubled window.
        ScanGrid wide = grid;
        double cx = (grid.x0 + grid.x1) / 2, cy = (grid.y0 + grid.y1) / 2;
        wide.x0 = cx - (grid.x1 - grid.x0);
        wide.x1 = cx + (grid.x1 - grid.x0);
        wide.y0 = cy - (grid.y1 - grid.y0);
        wide.y1 = cy + (grid.y1 - grid.y0);
        ScanResult w = raw_scan(pd, wide, parallel);
        for (auto& c : r.components) {
            if (c.touches_border) continue;
            c.bounded = std::none_of(w.components.begin(), w.components.end(), [&](const ComponentInfo& o) {
                return o.order == c.order && o.touches_border;
            });
        }
    }
    for (auto& s : r.points) {
        if (s.component < 0) continue;
        s.phase = r.components[s.component].bounded ? Phase::Gaseous : Phase::Frozen;
    }
    return r;
}

std::string scan_csv(const ScanResult& s) {
    std::string out = "Bx,By,phase,slope_x,slope_y,min_absP,component_id\n";
    char buf[256];
    for (const auto& p : s.points) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%s,%.10g,%.10g,%.10g,%d\n", p.bx, p.by, to_string(p.phase).c_str(),
                      p.slope.x + 0.0, p.slope.y + 0.0, p.min_abs, p.component);
        out += buf;
    }
    return out;
}

std::string boundary_polylines(const ScanResult& s) {
    const auto& g = s.grid;
    auto inside = [&](int i, int j) { return s.points[size_t(j) * g.nx + i].component < 0; };
    // Edge midpoints in half-cell units: (2i+1, 2j) horizontal, (2i, 2j+1) vertical.
    std::map<IVec2, std::vector<IVec2>> adj;
    auto link = [&](IVec2 a, IVec2 b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int j = 0; j + 1 < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) {
            bool c[4] = {inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)};
            // corners 0..3 counter-clockwise; edge q joins corner q and q+1
            const IVec2 mid[4] = {{2 * i + 1, 2 * j}, {2 * i + 2, 2 * j + 1}, {2 * i + 1, 2 * j + 2}, {2 * i, 2 * j + 1}};
            std::vector<int> cut;
            for (int q = 0; q < 4; ++q)
                if (c[q] != c[(q + 1) % 4]) cut.push_back(q);
            if (cut.size() == 2) {
                link(mid[cut[0]], mid[cut[1]]);
            } else if (cut.size() == 4) {
                // Saddle: keep the inside corners 0 and 2 separated.
                if (c[0]) {
                    link(mid[0], mid[3]);
                    link(mid[1], mid[2]);
                } else {
                    link(mid[0], mid[1]);
                    link(mid[2], mid[3]);
                }
            }
        }

    auto coord = [&](IVec2 h) {
        double x = g.x0 + (h.x / 2.0 + 0.5) * (g.x1 - g.x0) / g.nx;
        double y = g.y0 + (h.y / 2.0 + 0.5) * (g.y1 - g.y0) / g.ny;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g,%.10g", x, y);
        return std::string(buf);
    };
    std::map<IVec2, bool> seen;
    std::string out;
    auto trace = [&](IVec2 start) {
        std::string line = coord(start);
        seen[start] = true;
        IVec2 cur = start;
        for (;;) {
            auto it = std::find_if(adj[cur].begin(), adj[cur].end(), [&](IVec2 n) { return !seen[n]; });
            if (it == adj[cur].end()) {
                if (adj[cur].size() == 2 && cur != start &&
                    std::find(adj[cur].begin(), adj[cur].end(), start) != adj[cur].end())
                    line += " " + coord(start);  // closed loop
                break;
            }
            cur = *it;
            seen[cur] = true;
            line += " " + coord(cur);
        }
        out += line + "\n";
    };
    for (const auto& [p, n] : adj)
        if (n.size() == 1 && !seen[p]) trace(p);
    for (const auto& [p, n] : adj)
        if (!seen[p]) trace(p);
    return out;
}

}  // namespace dimers
