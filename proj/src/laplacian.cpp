#include "dimers/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace dimers {

namespace {

template <class T> T monomial(IVec2 e, const T& z, const T& w) { return ipow(z, e.x) * ipow(w, e.y); }

// Kasteleyn entry carried by one half-edge.
template <class T>
T half_value(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m, int h, const T& z, const T& w) {
    return scalar_cast<T>(d.half[h].weight) * T(o.sign[h]) * monomial(m.exp[h], z, w);
}

int primal_half(int dart) { return 4 * (dart >> 1) + (EmbeddedGraph::forward(dart) ? 0 : 1); }

int primal_rows(const DoubleGraph& d) {
    int p = 0;
    for (int v = 0; v < d.num_primal; ++v) p += !d.removed[v];
    return p;
}

int removed_primal(const DoubleGraph& d) {
    for (int v = 0; v < d.num_primal; ++v)
        if (d.removed[v]) return v;
    return -1;
}

int removed_face(const DoubleGraph& d) {
    for (int f = 0; f < d.num_dual; ++f)
        if (d.removed[d.num_primal + f]) return f;
    return -1;
}

// Calls visit(out) for every choice of one outgoing dart per vertex.
void for_each_functional_graph(const EmbeddedGraph& g, const std::function<void(const OrientedForest&)>& visit) {
    OrientedForest f{std::vector<int>(g.num_vertices(), -1)};
    std::function<void(int)> rec = [&](int v) {
        if (v == g.num_vertices()) {
            visit(f);
            return;
        }
        for (int dart : g.rotation[v]) {
            f.out[v] = dart;
            rec(v + 1);
        }
        f.out[v] = -1;
    };
    rec(0);
}

bool torus_forest(const std::vector<ForestCycle>& cs) {
    for (const auto& c : cs)
        if (c.cls.zero() || c.cls.x * cs[0].cls.y - c.cls.y * cs[0].cls.x != 0) return false;
    return !cs.empty();
}

RationalPoly multiply(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) r.add(ea + eb, ca * cb);
    return r;
}

RationalPoly power(const RationalPoly& a, int k) {
    RationalPoly r;
    r.add({}, Rational(1));
    for (int i = 0; i < k; ++i) r = multiply(r, a);
    return r;
}

RationalPoly one_minus(IVec2 e) {
    RationalPoly p;
    p.add({}, Rational(1));
    p.add(e, Rational(-1));
    return p;
}

bool has_shared_start(const EmbeddedGraph& g, const std::vector<int>& darts) {
    for (size_t i = 0; i < darts.size(); ++i)
        for (size_t j = i + 1; j < darts.size(); ++j)
            if ((darts[i] >> 1) == (darts[j] >> 1) || g.tail(darts[i]) == g.tail(darts[j])) return true;
    return false;
}

}  // namespace

template <class T> Connection<T> trivial_connection(const EmbeddedGraph& g) {
    return {std::vector<T>(g.num_darts(), T(1))};
}

template <class T> Connection<T> connection_from(const EmbeddedGraph& g, const DualPaths& p, const T& z, const T& w) {
    if (z == T(0) || w == T(0)) throw Error("connection_from: z and w must be nonzero");
    Connection<T> c;
    c.transport.resize(g.num_darts());
    for (int e = 0; e < g.num_edges(); ++e) {
        // Paths read backwards: left-to-right crossings of the reversed path.
        IVec2 k{-p.cross[e][0], -p.cross[e][1]};
        c.transport[2 * e] = monomial(k, z, w);
        c.transport[2 * e + 1] = monomial(-k, z, w);
    }
    return c;
}

template <class T>
MarkerConnections<T> marker_connections(const DoubleGraph& d, const Markers& m, const T& z, const T& w) {
    MarkerConnections<T> c;
    const int nd = d.host.num_darts();
    c.primal.transport.resize(nd);
    c.dual.transport.resize(nd);
    for (int dart = 0; dart < nd; ++dart) {
        const int e = dart >> 1;
        const bool fwd = EmbeddedGraph::forward(dart);
        int pt = 4 * e + (fwd ? 0 : 1), ph = 4 * e + (fwd ? 1 : 0);
        int dt = 4 * e + (fwd ? 2 : 3), dh = 4 * e + (fwd ? 3 : 2);
        c.primal.transport[dart] = monomial(m.exp[ph] - m.exp[pt], z, w);
        c.dual.transport[dart] = monomial(m.exp[dh] - m.exp[dt], z, w);
    }
    return c;
}

template <class T> T monodromy(const Connection<T>& c, const std::vector<int>& darts) {
    T r(1);
    for (int d : darts) r *= c.transport[EmbeddedGraph::twin(d)];
    return r;
}

template <class T> Matrix<T> laplacian_matrix(const EmbeddedGraph& g, const Connection<T>& c, int drop) {
    const int n = g.num_vertices();
    std::vector<int> index(n, -1);
    int k = 0;
    for (int v = 0; v < n; ++v)
        if (v != drop) index[v] = k++;
    Matrix<T> L(k, k);
    for (int v = 0; v < n; ++v) {
        if (index[v] < 0) continue;
        for (int d : g.rotation[v]) {
            T cw = scalar_cast<T>(g.weight(d));
            L(index[v], index[v]) += cw;
            int u = g.head(d);
            if (index[u] >= 0) L(index[v], index[u]) -= cw * c.transport[EmbeddedGraph::twin(d)];
        }
    }
    return L;
}

template <class T>
IncidenceOps<T> incidence_ops(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m, const T& z,
                              const T& w) {
    const int P = primal_rows(d), Q = d.num_rows() - P, E = d.num_white;
    IncidenceOps<T> ops{Matrix<T>(E, P), Matrix<T>(P, E), Matrix<T>(E, Q), Matrix<T>(Q, E)};
    for (size_t h = 0; h < d.half.size(); ++h) {
        const auto& he = d.half[h];
        int row = d.row_of_black[he.black];
        if (row < 0) continue;
        T t = monomial(m.exp[h], z, w), s(o.sign[h]);
        T star = scalar_cast<T>(he.weight) * s * t;
        if (d.is_dual(he.black)) {
            ops.d_dual(he.white, row - P) += s / t;
            ops.dstar_dual(row - P, he.white) += star;
        } else {
            ops.d(he.white, row) += s / t;
            ops.dstar(row, he.white) += star;
        }
    }
    return ops;
}

template <class T>
Matrix<T> m_matrix(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m, const T& z, const T& w) {
    auto ops = incidence_ops(d, o, m, z, w);
    const int P = ops.d.cols();
    Matrix<T> M(d.num_white, d.num_rows());
    for (int e = 0; e < d.num_white; ++e) {
        for (int j = 0; j < P; ++j) M(e, j) = ops.d(e, j);
        for (int j = 0; j < ops.d_dual.cols(); ++j) M(e, P + j) = ops.d_dual(e, j);
    }
    return M;
}

template <class T> FormanReport verify_forman(const TorusGraph& t, const Connection<T>& c) {
    T lhs = determinant(laplacian_matrix(t, c, -1));
    T rhs(0);
    FormanReport r;
    for_each_functional_graph(t, [&](const OrientedForest& f) {
        T term(1);
        for (int dart : f.out) term *= scalar_cast<T>(t.weight(dart));
        for (const auto& cyc : primal_cycles(t, f)) term *= T(1) - monodromy(c, cyc.darts);
        if (term == T(0)) return;
        ++r.forests;
        rhs += term;
    });
    r.exact = lhs == rhs;
    double scale = std::max({magnitude(lhs), magnitude(rhs), 1e-300});
    r.max_error = magnitude(lhs - rhs) / scale;
    return r;
}

RationalPoly laplacian_char_poly(const TorusGraph& t, const DualPaths& p) {
    IVec2 lo, hi;
    for (int v = 0; v < t.num_vertices(); ++v) {
        IVec2 mn, mx;
        for (int d : t.rotation[v]) {
            int e = d >> 1;
            IVec2 k{p.cross[e][0], p.cross[e][1]};
            if (!EmbeddedGraph::forward(d)) k = -k;  // exponent of transport[twin d]
            mn = {std::min(mn.x, k.x), std::min(mn.y, k.y)};
            mx = {std::max(mx.x, k.x), std::max(mx.y, k.y)};
        }
        lo += mn;
        hi += mx;
    }
    auto det_at = [&](const Rational& z, const Rational& w) {
        return determinant(laplacian_matrix(t, connection_from(t, p, z, w), -1));
    };
    auto poly = interpolate_exact(det_at, lo, hi);
    const Rational zc(-2, 3), wc(5, 7);
    if (poly(zc, wc) != det_at(zc, wc)) throw Error("laplacian_char_poly: interpolation does not reproduce det");
    return poly;
}

RationalPoly grouped_forest_poly(const TorusGraph& t) {
    RationalPoly total;
    for_each_functional_graph(t, [&](const OrientedForest& f) {
        auto cs = primal_cycles(t, f);
        if (!torus_forest(cs)) return;
        IVec2 mn = normalize_class(cs[0].cls);
        int k = int(cs.size()), k1 = 0;
        for (const auto& c : cs) k1 += c.cls == mn;
        Rational weight = 1;
        for (int dart : f.out) weight *= t.weight(dart);
        const IVec2 x{mn.y, -mn.x};  // z^n w^-m
        auto term = multiply(power(one_minus(-x), k1), power(one_minus(x), k - k1));
        for (const auto& [e, c] : term.terms) total.add(e, c * weight);
    });
    return total;
}

LaplacianDeterminantReport verify_laplacian_determinant(const PeriodicGraph& g, int n, int float_points, std::uint64_t seed) {
    auto setup = torus_setup(g, n);
    const auto& t = setup.dg.host;
    LaplacianDeterminantReport r;
    auto heights = height_expansion(setup.dg);
    auto lap = laplacian_char_poly(t, setup.paths);
    r.laplacian_matches_heights = lap == heights;
    r.grouped_form_matches = grouped_forest_poly(t) == heights;
    r.gauge = align_gauge(char_poly(setup.dg, setup.orientation, setup.markers), lap);

    for (const auto& m : enumerate_dimers(setup.dg)) {
        IVec2 h = height_change(setup.dg, m);
        auto hd = homology_data(t, dimer_to_forest(setup.dg, m));
        int a = hd.k - hd.k1 - hd.k2;
        ++r.sign_checks;
        if (((h.x * h.y + h.x + h.y) & 1) != (a & 1)) ++r.sign_failures;
    }

    if (r.gauge) {
        RandomStream rng(seed, 0);
        for (int i = 0; i < float_points; ++i) {
            double a = 2 * std::numbers::pi * rng.uniform(), b = 2 * std::numbers::pi * rng.uniform();
            Complex z = std::polar(1.0, a), w = std::polar(1.0, b);
            Complex lhs = determinant(kasteleyn_matrix(setup.dg, setup.orientation, setup.markers, z, w));
            Complex rhs = double(r.gauge->sign) * monomial(r.gauge->shift, z, w) *
                          determinant(laplacian_matrix(t, connection_from(t, setup.paths, z, w), -1));
            double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
            r.max_rel_error = std::max(r.max_rel_error, std::abs(lhs - rhs) / scale);
        }
    }
    return r;
}

template <class T>
BlockReport verify_block_identity(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m, const T& z,
                                  const T& w) {
    BlockReport r;
    auto K = kasteleyn_matrix(d, o, m, z, w);
    auto ops = incidence_ops(d, o, m, z, w);
    auto KM = K * m_matrix(d, o, m, z, w);
    const int P = ops.d.cols(), Q = ops.d_dual.cols();
    auto conn = marker_connections(d, m, z, w);
    auto dual = build_dual(d.host);

    auto lower_left = KM.block(P, 0, Q, P);
    auto primal_diff = KM.block(0, 0, P, P) - laplacian_matrix(d.host, conn.primal, removed_primal(d));
    auto dual_diff = KM.block(P, P, Q, Q) - laplacian_matrix(dual, conn.dual, removed_face(d));
    auto star_diff = ops.dstar * ops.d - laplacian_matrix(d.host, conn.primal, removed_primal(d));
    r.zero_block = lower_left.max_abs();
    r.primal_block = std::max(primal_diff.max_abs(), star_diff.max_abs());
    r.dual_block = dual_diff.max_abs();
    bool exact = lower_left.is_zero() && primal_diff.is_zero() && star_diff.is_zero() && dual_diff.is_zero();

    // Per quad: (dual black, primal black) through both whites.
    for (const auto& q : d.quads) {
        if (q.removed) continue;
        const auto& s = q.sides;
        int pb = d.is_dual(q.blacks[0]) ? 1 : 0;  // 0: b0 primal (sides 0, 3)
        int p0 = pb == 0 ? s[0] : s[1], f0 = pb == 0 ? s[1] : s[0];
        int p1 = pb == 0 ? s[3] : s[2], f1 = pb == 0 ? s[2] : s[3];
        auto term = [&](int f, int p) {
            return half_value(d, o, m, f, z, w) * T(o.sign[p]) / monomial(m.exp[p], z, w);
        };
        T sum = term(f0, p0) + term(f1, p1);
        r.corner_max = std::max(r.corner_max, magnitude(sum));
        exact = exact && sum == T(0);
    }

    auto kinv = K.rows() == K.cols() ? inverse(K) : std::nullopt;
    r.singular = !kinv;
    if (kinv) {
        auto kv = kinv->block(0, 0, kinv->rows(), P);
        auto res = kv * laplacian_matrix(d.host, conn.primal, removed_primal(d)) - ops.d;
        r.inverse_residual = res.max_abs();
        exact = exact && res.is_zero();
    }
    r.exact_zero = exact;
    return r;
}

WiredKernel::WiredKernel(const WiredGraph& w) : dg_(build_double(w)), o_(orient(dg_)) {
    k_ = kasteleyn_matrix(dg_, o_, no_markers(dg_), Rational(1), Rational(1));
    auto inv = dimers::inverse(k_);
    if (!inv) throw Error("WiredKernel: Kasteleyn matrix is singular");
    kinv_ = std::move(*inv);
}

Rational WiredKernel::probability(const std::vector<int>& darts) const {
    const auto& g = dg_.host;
    if (has_shared_start(g, darts)) return 0;
    const int k = int(darts.size());
    Matrix<Rational> a(k, k);
    for (int j = 0; j < k; ++j) {
        int h = primal_half(darts[j]);
        int row = dg_.row_of_black[g.tail(darts[j])];
        if (row < 0) return 0;
        Rational kv = half_value(dg_, o_, no_markers(dg_), h, Rational(1), Rational(1));
        for (int i = 0; i < k; ++i) a(i, j) = kv * kinv_(darts[i] >> 1, row);
    }
    return determinant(a);
}

Rational WiredKernel::undirected_probability(const std::vector<int>& edges) const {
    const int k = int(edges.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (edges[i] == edges[j]) return 0;
    const auto markers = no_markers(dg_);
    Matrix<Rational> a(k, k);
    for (int j = 0; j < k; ++j)
        for (int role = 0; role < 2; ++role) {
            int h = 4 * edges[j] + role;
            int row = dg_.row_of_black[dg_.half[h].black];
            if (row < 0) continue;
            Rational kv = half_value(dg_, o_, markers, h, Rational(1), Rational(1));
            for (int i = 0; i < k; ++i) a(i, j) += kv * kinv_(edges[i], row);
        }
    return determinant(a);
}

TorusKernel::TorusKernel(const PeriodicGraph& g, int n, const Rational& z, const Rational& w)
    : t_(torus_setup(g, n)), field_z_(z), field_w_(w) {
    if (z == 0 || w == 0) throw Error("TorusKernel: z and w must be nonzero");
    pattern_ = predicted_pattern(kasteleyn_gauge(t_));
    std::array<Rational, 4> dets;
    for (int i = 0; i < 4; ++i) {
        Rational zi = i & 2 ? -z : z, wi = i & 1 ? -w : w;
        k_[i] = kasteleyn_matrix(t_.dg, t_.orientation, t_.markers, zi, wi);
        dets[i] = determinant(k_[i]);
    }
    z_ = combine(dets, pattern_);
    if (z_ == 0) throw Error("TorusKernel: vanishing partition function");
}

Rational TorusKernel::probability(const std::vector<int>& darts) const {
    const auto& dg = t_.dg;
    const auto& g = dg.host;
    if (has_shared_start(g, darts)) return 0;
    std::vector<int> rs, cs;
    for (int dart : darts) {
        rs.push_back(dg.row_of_black[g.tail(dart)]);
        cs.push_back(dart >> 1);
    }
    std::vector<int> keep_r, keep_c;
    for (int i = 0; i < dg.num_rows(); ++i)
        if (std::find(rs.begin(), rs.end(), i) == rs.end()) keep_r.push_back(i);
    for (int j = 0; j < dg.num_white; ++j)
        if (std::find(cs.begin(), cs.end(), j) == cs.end()) keep_c.push_back(j);
    const int sign = laplace_sign(rs, cs);
    std::array<Rational, 4> terms;
    for (int i = 0; i < 4; ++i) {
        Rational zi = i & 2 ? -field_z_ : field_z_, wi = i & 1 ? -field_w_ : field_w_;
        // Only the chosen half-edge's share of each entry (loops put two halves in one entry).
        Rational prod = sign;
        for (int dart : darts) prod *= half_value(dg, t_.orientation, t_.markers, primal_half(dart), zi, wi);
        terms[i] = prod * (keep_r.empty() ? Rational(1) : determinant(k_[i].select(keep_r, keep_c)));
    }
    return combine(terms, pattern_) / z_;
}

Gauge kasteleyn_gauge(const TorusSetup& t) {
    auto g = align_gauge(char_poly(t.dg, t.orientation, t.markers), laplacian_char_poly(t.dg.host, t.paths));
    if (!g) throw Error("kasteleyn_gauge: det K is not a monomial multiple of the Laplacian determinant");
    return *g;
}

template <class T> std::vector<T> out_weights(const EmbeddedGraph& g) {
    std::vector<T> out;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (v == g.root) continue;
        T s(0);
        for (int d : g.rotation[v]) s += scalar_cast<T>(g.weight(d));
        out.push_back(s);
    }
    return out;
}

template <class T> Matrix<T> green_matrix(const WiredGraph& w) {
    const auto& g = w.graph;
    auto dg = build_double(w);
    auto ops = incidence_ops(dg, orient(dg), no_markers(dg), T(1), T(1));
    auto a = laplacian_matrix(g, trivial_connection<T>(g), g.root);
    auto deg = out_weights<T>(g);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) a(i, j) /= deg[i];
    auto b = solve_right(a, ops.d);
    if (!b) throw Error("green_matrix: reduced Laplacian is singular");
    return *b;
}

VisitEstimate estimate_visits(const EmbeddedGraph& g, int walks, std::uint64_t seed, bool parallel) {
    if (g.root < 0) throw Error("estimate_visits: graph has no absorbing root");
    if (walks < 2) throw Error("estimate_visits: need at least two walks");
    const int n = g.num_vertices();
    std::vector<int> index(n, -1);
    int k = 0;
    for (int v = 0; v < n; ++v)
        if (v != g.root) index[v] = k++;
    std::vector<std::vector<double>> cumulative(n);
    for (int v = 0; v < n; ++v) {
        double acc = 0;
        for (int d : g.rotation[v]) cumulative[v].push_back(acc += to_double(g.weight(d)));
    }

    VisitEstimate r{Matrix<double>(k, k), Matrix<double>(k, k), 0};
    long long unabsorbed = 0;
    auto run_start = [&](int s) {
        RandomStream rng(seed, std::uint64_t(s));
        std::vector<double> sum(k, 0), sumsq(k, 0);
        std::vector<long long> count(k, 0);
        std::vector<int> touched;
        long long lost = 0;
        const int start = [&] {
            for (int v = 0; v < n; ++v)
                if (index[v] == s) return v;
            return -1;
        }();
        for (int i = 0; i < walks; ++i) {
            int v = start;
            long long steps = 0;
            auto visit = [&](int u) {
                if (count[index[u]]++ == 0) touched.push_back(index[u]);
            };
            visit(v);
            while (true) {
                if (++steps > walk_step_cap) {
                    ++lost;
                    break;
                }
                const auto& cum = cumulative[v];
                double x = rng.uniform() * cum.back();
                int pick = int(std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
                v = g.head(g.rotation[v][std::min(pick, int(cum.size()) - 1)]);
                if (v == g.root) break;
                visit(v);
            }
            for (int u : touched) {
                double c = double(count[u]);
                sum[u] += c;
                sumsq[u] += c * c;
                count[u] = 0;
            }
            touched.clear();
        }
        for (int u = 0; u < k; ++u) {
            double mean = sum[u] / walks;
            double var = std::max(0.0, (sumsq[u] - walks * mean * mean) / (walks - 1));
            r.mean(s, u) = mean;
            r.sem(s, u) = std::sqrt(var / walks);
        }
        return lost;
    };
#pragma omp parallel for schedule(dynamic) reduction(+ : unabsorbed) if (parallel)
    for (int s = 0; s < k; ++s) unabsorbed += run_start(s);
    r.unabsorbed = unabsorbed;
    return r;
}

std::vector<ProbeRow> star_condition_probe(const PeriodicGraph& g, const std::vector<int>& sizes, int radius) {
    if (sizes.empty() || radius < 1) throw Error("star_condition_probe: need sizes and a positive radius");
    std::vector<ProbeRow> rows;
    int largest = *std::max_element(sizes.begin(), sizes.end());
    for (int n : sizes) {
        auto w = build_wired(g, n);
        const auto& t = w.graph;
        auto b = green_matrix<double>(w);
        const IVec2 centre{(n - 1) / 2, (n - 1) / 2};
        int c = -1;
        for (int v = 0; v < t.num_vertices(); ++v)
            if (v != t.root && t.base_vertex[v] == 0 && t.vertex_cell[v] == centre) c = v;
        if (c < 0) throw Error("star_condition_probe: size too small for a central vertex");
        std::vector<int> near;
        for (int e = 0; e < t.num_edges(); ++e)
            if (t.edges[e].tail == c || t.edges[e].head == c) near.push_back(e);
        std::vector<double> by_distance(radius + 1, -1);
        for (int v = 0; v < t.num_vertices(); ++v) {
            if (v == t.root) continue;
            IVec2 dc = t.vertex_cell[v] - centre;
            int dist = std::max(std::abs(dc.x), std::abs(dc.y));
            if (dist < 1 || dist > radius) continue;
            int col = v < t.root ? v : v - 1;
            for (int e : near) by_distance[dist] = std::max(by_distance[dist], std::abs(b(e, col)));
        }
        for (int dist = 1; dist <= radius; ++dist) {
            if (by_distance[dist] < 0) continue;
            ProbeRow row{n, dist, by_distance[dist], "-"};
            if (n == largest && 2 * dist <= radius && by_distance[2 * dist] >= 0)
                row.verdict = by_distance[2 * dist] < 0.5 * by_distance[dist] ? "pass" : "fail";
            rows.push_back(row);
        }
    }
    return rows;
}

std::string probe_csv(const std::vector<ProbeRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "N,distance,max_abs_entry,verdict\n";
    for (const auto& r : rows) os << r.n << ',' << r.distance << ',' << r.max_abs_entry << ',' << r.verdict << '\n';
    return os.str();
}

#define DIMERS_LAPLACIAN(T)                                                                                        \
    template Connection<T> trivial_connection(const EmbeddedGraph&);                                               \
    template Connection<T> connection_from(const EmbeddedGraph&, const DualPaths&, const T&, const T&);            \
    template MarkerConnections<T> marker_connections(const DoubleGraph&, const Markers&, const T&, const T&);       \
    template T monodromy(const Connection<T>&, const std::vector<int>&);                                           \
    template Matrix<T> laplacian_matrix(const EmbeddedGraph&, const Connection<T>&, int);                          \
    template IncidenceOps<T> incidence_ops(const DoubleGraph&, const KasteleynOrientation&, const Markers&,        \
                                           const T&, const T&);                                                    \
    template Matrix<T> m_matrix(const DoubleGraph&, const KasteleynOrientation&, const Markers&, const T&,          \
                                const T&);                                                                         \
    template FormanReport verify_forman(const TorusGraph&, const Connection<T>&);                                  \
    template BlockReport verify_block_identity(const DoubleGraph&, const KasteleynOrientation&, const Markers&,    \
                                               const T&, const T&);

DIMERS_LAPLACIAN(Rational)
DIMERS_LAPLACIAN(double)
DIMERS_LAPLACIAN(Complex)
#undef DIMERS_LAPLACIAN

template std::vector<Rational> out_weights(const EmbeddedGraph&);
template std::vector<double> out_weights(const EmbeddedGraph&);
template Matrix<Rational> green_matrix(const WiredGraph&);
template Matrix<double> green_matrix(const WiredGraph&);

}  // namespace dimers
