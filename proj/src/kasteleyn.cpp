#include "dimers/kasteleyn.hpp"

#include <algorithm>

namespace dimers {

KasteleynOrientation orient(const DoubleGraph& d, const std::vector<char>& flip) {
    const auto& host = d.host;
    if (!flip.empty() && int(flip.size()) != host.num_edges()) throw Error("orient: flip vector has wrong length");
    KasteleynOrientation o;
    o.sign.assign(d.half.size(), 0);
    for (int e = 0; e < host.num_edges(); ++e) {
        const auto& r = host.edges[e];
        bool reversed = r.tail > r.head;
        if (!flip.empty() && flip[e]) reversed = !reversed;
        const int s = reversed ? -1 : 1;
        o.sign[4 * e + 0] = s;
        o.sign[4 * e + 1] = -s;
        o.sign[4 * e + 2] = s;
        o.sign[4 * e + 3] = -s;
    }
    return o;
}

KasteleynOrientation orient(const DoubleGraph& d) { return orient(d, {}); }

std::vector<int> odd_rule_violations(const DoubleGraph& d, const KasteleynOrientation& o) {
    std::vector<int> bad;
    for (size_t q = 0; q < d.quads.size(); ++q) {
        const auto& s = d.quads[q].sides;
        // Walk order is b0 -> w0 -> b1 -> w1 -> b0.
        int along = (o.sign[s[0]] > 0) + (o.sign[s[1]] < 0) + (o.sign[s[2]] > 0) + (o.sign[s[3]] < 0);
        if ((4 - along) % 2 == 0) bad.push_back(int(q));
    }
    return bad;
}

Markers no_markers(const DoubleGraph& d) { return {std::vector<IVec2>(d.half.size())}; }

Markers markers_from(const DoubleGraph& d, const DualPaths& paths) {
    Markers m = no_markers(d);
    // Half-edges strictly counterclockwise between `in` and `out`, which lie on
    // the right of the path through this vertex.
    auto sweep = [&](const auto& rot, int in, int out, IVec2 delta) {
        const int k = int(rot.size());
        int i = int(std::find(rot.begin(), rot.end(), in) - rot.begin());
        for (int step = 1; step < k; ++step) {
            int h = rot[(i + step) % k];
            if (h == out) return;
            m.exp[h] += delta;
        }
        throw Error("markers_from: path leaves through an unknown half-edge");
    };
    for (int k = 0; k < 2; ++k) {
        const IVec2 unit = k == 0 ? IVec2{1, 0} : IVec2{0, 1};
        const auto& g = paths.gamma[k];
        const int L = int(g.size());
        for (int i = 0; i < L; ++i) {
            int dart = g[i], e = dart >> 1;
            bool fwd = EmbeddedGraph::forward(dart);
            int leave = 4 * e + (fwd ? 2 : 3), enter = 4 * e + (fwd ? 3 : 2);
            sweep(d.white_rotation[e], leave, enter, -unit);
            int next = g[(i + 1) % L], ne = next >> 1;
            int leave_next = 4 * ne + (EmbeddedGraph::forward(next) ? 2 : 3);
            sweep(d.black_rotation[d.half[enter].black], enter, leave_next, unit);
        }
    }
    return m;
}

template <class T>
Matrix<T> kasteleyn_matrix(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m, const T& z,
                           const T& w) {
    Matrix<T> k(d.num_rows(), d.num_white);
    for (size_t h = 0; h < d.half.size(); ++h) {
        const auto& he = d.half[h];
        int row = d.row_of_black[he.black];
        if (row < 0) continue;
        T v = scalar_cast<T>(he.weight) * T(o.sign[h]);
        if (m.exp[h].x) v *= ipow(z, m.exp[h].x);
        if (m.exp[h].y) v *= ipow(w, m.exp[h].y);
        k(row, he.white) += v;
    }
    return k;
}

template Matrix<Rational> kasteleyn_matrix(const DoubleGraph&, const KasteleynOrientation&, const Markers&,
                                           const Rational&, const Rational&);
template Matrix<double> kasteleyn_matrix(const DoubleGraph&, const KasteleynOrientation&, const Markers&,
                                         const double&, const double&);
template Matrix<Complex> kasteleyn_matrix(const DoubleGraph&, const KasteleynOrientation&, const Markers&,
                                          const Complex&, const Complex&);

std::pair<IVec2, IVec2> degree_box(const DoubleGraph& d, const Markers& m) {
    IVec2 lo, hi;
    for (int b : d.black_of_row) {
        const auto& rot = d.black_rotation[b];
        if (rot.empty()) continue;
        IVec2 mn = m.exp[rot[0]], mx = m.exp[rot[0]];
        for (int h : rot) {
            mn = {std::min(mn.x, m.exp[h].x), std::min(mn.y, m.exp[h].y)};
            mx = {std::max(mx.x, m.exp[h].x), std::max(mx.y, m.exp[h].y)};
        }
        lo += mn;
        hi += mx;
    }
    return {lo, hi};
}

RationalPoly char_poly(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m) {
    auto det_at = [&](const Rational& z, const Rational& w) { return determinant(kasteleyn_matrix(d, o, m, z, w)); };
    auto [lo, hi] = degree_box(d, m);
    auto p = interpolate_exact(det_at, lo, hi);
    const Rational zc(-2, 3), wc(5, 7);
    if (p(zc, wc) != det_at(zc, wc)) {
        // The box is rigorous; one widening guards against a bookkeeping slip.
        lo -= IVec2{1, 1};
        hi += IVec2{1, 1};
        p = interpolate_exact(det_at, lo, hi);
        if (p(zc, wc) != det_at(zc, wc)) throw Error("char_poly: interpolation does not reproduce det K");
    }
    return p;
}

LaurentPoly<double> char_poly_float(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m) {
    auto [lo, hi] = degree_box(d, m);
    return interpolate_dft(
        [&](Complex z, Complex w) { return determinant(kasteleyn_matrix(d, o, m, z, w)); }, lo, hi);
}

Rational combine(const std::array<Rational, 4>& dets, const SignPattern& s) {
    Rational z = 0;
    for (int i = 0; i < 4; ++i) z += s[i] * dets[i];
    return z / 2;
}

std::array<Rational, 4> theta_tau_determinants(const DoubleGraph& d, const KasteleynOrientation& o,
                                                const Markers& m) {
    std::array<Rational, 4> out;
    for (int theta = 0; theta < 2; ++theta)
        for (int tau = 0; tau < 2; ++tau)
            out[2 * theta + tau] =
                determinant(kasteleyn_matrix(d, o, m, Rational(theta ? -1 : 1), Rational(tau ? -1 : 1)));
    return out;
}

std::vector<SignPattern> calibrate_patterns(const std::array<Rational, 4>& dets, const Rational& z) {
    std::vector<SignPattern> hits;
    for (int mask = 0; mask < 16; ++mask) {
        int minus = __builtin_popcount(mask);
        if (minus != 1 && minus != 3) continue;
        SignPattern s;
        for (int i = 0; i < 4; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
        if (combine(dets, s) == z) hits.push_back(s);
    }
    return hits;
}

SignPattern predicted_pattern(const Gauge& g) {
    SignPattern s{-1, 1, 1, 1};
    for (int theta = 0; theta < 2; ++theta)
        for (int tau = 0; tau < 2; ++tau) {
            int parity = (theta * g.shift.x + tau * g.shift.y) & 1;
            s[2 * theta + tau] *= g.sign * (parity ? -1 : 1);
        }
    return s;
}

PartitionFunction partition_function(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m,
                                     const SignPattern& s) {
    PartitionFunction pf;
    pf.dets = theta_tau_determinants(d, o, m);
    pf.pattern = s;
    pf.value = combine(pf.dets, s);
    return pf;
}

TorusSetup torus_setup(const PeriodicGraph& g, int n) {
    auto host = build_quotient(g, n);
    TorusSetup t{build_double(host), choose_dual_paths(host), {}, {}};
    t.orientation = orient(t.dg);
    t.markers = markers_from(t.dg, t.paths);
    return t;
}

}  // namespace dimers
