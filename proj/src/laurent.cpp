#include "dimers/laurent.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace dimers {

LaurentPoly<double> to_double(const RationalPoly& p) {
    LaurentPoly<double> r;
    for (const auto& [e, c] : p.terms) r.terms.emplace(e, to_double(c));
    return r;
}

std::optional<Gauge> align_gauge(const RationalPoly& p, const RationalPoly& q) {
    if (p.empty() || q.empty()) return std::nullopt;
    const auto& [ep, cp] = *p.terms.begin();
    const auto& [eq, cq] = *q.terms.begin();
    Gauge g;
    g.shift = ep - eq;
    if (cp == cq) g.sign = 1;
    else if (cp == -cq) g.sign = -1;
    else return std::nullopt;
    if (p != q.shifted(g.shift).scaled(Rational(g.sign))) return std::nullopt;
    return g;
}

std::optional<Gauge> align_gauge(const LaurentPoly<double>& p, const LaurentPoly<double>& q, double tol) {
    if (p.empty() || q.empty() || p.terms.size() != q.terms.size()) return std::nullopt;
    const auto& [ep, cp] = *p.terms.begin();
    const auto& [eq, cq] = *q.terms.begin();
    Gauge g;
    g.shift = ep - eq;
    g.sign = (cp * cq > 0) ? 1 : -1;
    double scale = 0;
    for (const auto& [e, c] : p.terms) scale = std::max(scale, std::abs(c));
    for (const auto& [e, c] : q.terms) {
        double other = p.coeff(e + g.shift);
        if (std::abs(other - g.sign * c) > tol * scale) return std::nullopt;
    }
    return g;
}

RationalPoly normalize_sign(const RationalPoly& p) {
    if (p.empty() || p.terms.begin()->second > 0) return p;
    return p.scaled(Rational(-1));
}

namespace {

nlohmann::json coeff_json(const Rational& c) {
    if (denominator(c) == 1) return nlohmann::json::parse(numerator(c).str());
    return to_string(c);
}

long cross3(IVec2 o, IVec2 a, IVec2 b) {
    return long(a.x - o.x) * (b.y - o.y) - long(a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::string to_json(const RationalPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [e, c] : p.terms) a.push_back({{"i", e.x}, {"j", e.y}, {"c", coeff_json(c)}});
    return a.dump();
}

std::string to_json(const LaurentPoly<double>& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [e, c] : p.terms) a.push_back({{"i", e.x}, {"j", e.y}, {"c", c}});
    return a.dump();
}

std::string pretty(const RationalPoly& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms) {
        Rational mag = c < 0 ? Rational(-c) : c;
        bool unit = mag == 1 && !e.zero();
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (!unit) os << to_string(mag);
        auto var = [&](const char* name, int k) {
            if (k == 0) return;
            if (!unit) os << "*";
            unit = false;
            os << name;
            if (k != 1) os << "^" << k;
        };
        var("z", e.x);
        var("w", e.y);
        first = false;
    }
    return os.str();
}

NewtonPolygon newton_polygon_of(std::vector<IVec2> pts) {
    if (pts.empty()) throw Error("newton_polygon: zero polynomial");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    NewtonPolygon np;
    if (pts.size() == 1) {
        np.vertices = pts;
        np.boundary = pts;
        return np;
    }
    std::vector<IVec2> hull(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross3(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross3(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    np.vertices = hull;

    int x0 = pts.front().x, x1 = pts.back().x, y0 = pts.front().y, y1 = pts.front().y;
    for (auto p : pts) y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    const size_t m = hull.size();
    for (int x = x0; x <= x1; ++x)
        for (int y = y0; y <= y1; ++y) {
            IVec2 p{x, y};
            bool on_edge = false, inside = true;
            for (size_t i = 0; i < m; ++i) {
                IVec2 a = hull[i], b = hull[(i + 1) % m];
                long c = cross3(a, b, p);
                if (c < 0) inside = false;
                if (c == 0 && std::min(a.x, b.x) <= x && x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= y &&
                    y <= std::max(a.y, b.y))
                    on_edge = true;
            }
            if (on_edge) np.boundary.push_back(p);
            else if (inside && m >= 3) np.interior.push_back(p);
        }
    return np;
}

bool NewtonPolygon::contains(IVec2 p) const {
    for (auto b : boundary)
        if (b == p) return true;
    for (auto b : interior)
        if (b == p) return true;
    return false;
}

bool NewtonPolygon::contains(Vec2 p, double tol) const {
    const size_t m = vertices.size();
    if (m == 1) return norm(p - Vec2::of(vertices[0])) <= tol;
    if (m == 2) {
        Vec2 a = Vec2::of(vertices[0]), b = Vec2::of(vertices[1]);
        double t = dot(p - a, b - a) / dot(b - a, b - a);
        t = std::clamp(t, 0.0, 1.0);
        return norm(p - (a + t * (b - a))) <= tol;
    }
    for (size_t i = 0; i < m; ++i) {
        Vec2 a = Vec2::of(vertices[i]), b = Vec2::of(vertices[(i + 1) % m]);
        if (cross(b - a, p - a) < -tol * norm(b - a)) return false;
    }
    return true;
}

namespace {

// Monomial coefficients of the polynomial through (k + 1, v[k]), k = 0..n-1.
std::vector<Rational> interpolate_1d(std::vector<Rational> v) {
    const int n = int(v.size());
    // Newton divided differences on nodes 1..n.
    for (int j = 1; j < n; ++j)
        for (int i = n - 1; i >= j; --i) v[i] = (v[i] - v[i - 1]) / Rational(j);
    // Horner expansion of the Newton form.
    std::vector<Rational> c(n, Rational(0));
    for (int i = n - 1; i >= 0; --i) {
        // c <- c * (x - (i + 1)) + v[i]
        std::vector<Rational> next(n, Rational(0));
        for (int d = 0; d < n; ++d) {
            if (c[d] == 0) continue;
            if (d + 1 < n) next[d + 1] += c[d];
            next[d] -= c[d] * (i + 1);
        }
        next[0] += v[i];
        c = std::move(next);
    }
    return c;
}

}  // namespace

RationalPoly interpolate_exact(const std::function<Rational(const Rational&, const Rational&)>& f, IVec2 lo,
                               IVec2 hi) {
    const int nz = hi.x - lo.x + 1, nw = hi.y - lo.y + 1;
    // g(z, w) = z^-lo.x w^-lo.y f(z, w) is an ordinary polynomial.
    std::vector<std::vector<Rational>> byw(nw);  // byw[b][i]: z^i coefficient at w = b + 1
    for (int b = 0; b < nw; ++b) {
        std::vector<Rational> vals(nz);
        Rational w(b + 1);
        for (int a = 0; a < nz; ++a) {
            Rational z(a + 1);
            vals[a] = f(z, w) * ipow(z, -lo.x) * ipow(w, -lo.y);
        }
        byw[b] = interpolate_1d(std::move(vals));
    }
    RationalPoly p;
    for (int i = 0; i < nz; ++i) {
        std::vector<Rational> vals(nw);
        for (int b = 0; b < nw; ++b) vals[b] = byw[b][i];
        auto c = interpolate_1d(std::move(vals));
        for (int j = 0; j < nw; ++j)
            if (c[j] != 0) p.terms.emplace(IVec2{i + lo.x, j + lo.y}, c[j]);
    }
    return p;
}

LaurentPoly<double> interpolate_dft(const std::function<Complex(Complex, Complex)>& f, IVec2 lo, IVec2 hi,
                                    double drop_below) {
    const int nz = hi.x - lo.x + 1, nw = hi.y - lo.y + 1;
    std::vector<Complex> vals(size_t(nz) * nw);
    for (int a = 0; a < nz; ++a)
        for (int b = 0; b < nw; ++b)
            vals[size_t(a) * nw + b] = f(std::polar(1.0, 2 * M_PI * a / nz), std::polar(1.0, 2 * M_PI * b / nw));
    LaurentPoly<double> p;
    double biggest = 0;
    std::map<IVec2, double> raw;
    for (int i = lo.x; i <= hi.x; ++i)
        for (int j = lo.y; j <= hi.y; ++j) {
            Complex acc = 0;
            for (int a = 0; a < nz; ++a)
                for (int b = 0; b < nw; ++b)
                    acc += vals[size_t(a) * nw + b] *
                           std::polar(1.0, -2 * M_PI * (double(a) * i / nz + double(b) * j / nw));
            double c = acc.real() / (nz * nw);
            raw[{i, j}] = c;
            biggest = std::max(biggest, std::abs(c));
        }
    for (const auto& [e, c] : raw)
        if (std::abs(c) > drop_below * std::max(1.0, biggest)) p.terms.emplace(e, c);
    return p;
}

}  // namespace dimers
