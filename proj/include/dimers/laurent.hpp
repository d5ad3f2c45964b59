#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimers/core.hpp"

namespace dimers {

// Two-variable Laurent polynomial: exponent (i, j) of z^i w^j -> coefficient.
template <class T> struct LaurentPoly {
    std::map<IVec2, T> terms;

    void add(IVec2 e, const T& c) {
        auto [it, fresh] = terms.try_emplace(e, c);
        if (!fresh) it->second += c;
        if (it->second == T(0)) terms.erase(it);
    }
    bool empty() const { return terms.empty(); }
    T coeff(IVec2 e) const {
        auto it = terms.find(e);
        return it == terms.end() ? T(0) : it->second;
    }

    template <class S> S operator()(const S& z, const S& w) const {
        S acc(0);
        for (const auto& [e, c] : terms) acc += scalar_cast<S>(c) * ipow(z, e.x) * ipow(w, e.y);
        return acc;
    }

    LaurentPoly shifted(IVec2 by) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms) r.terms.emplace(e + by, c);
        return r;
    }
    LaurentPoly scaled(const T& k) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms)
            if (c * k != T(0)) r.terms.emplace(e, c * k);
        return r;
    }
    // P(1/z, 1/w).
    LaurentPoly reflected() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms) r.terms.emplace(-e, c);
        return r;
    }
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
};

using RationalPoly = LaurentPoly<Rational>;

LaurentPoly<double> to_double(const RationalPoly& p);

// Monomial gauge relating two polynomials: p = sign * z^shift.x w^shift.y * q.
struct Gauge {
    int sign = 1;
    IVec2 shift;
};
std::optional<Gauge> align_gauge(const RationalPoly& p, const RationalPoly& q);
std::optional<Gauge> align_gauge(const LaurentPoly<double>& p, const LaurentPoly<double>& q, double tol);

// Fixes the gauge so the lexicographically smallest Newton-polygon vertex
// has a positive coefficient (no monomial shift is applied).
RationalPoly normalize_sign(const RationalPoly& p);

std::string to_json(const RationalPoly& p);
std::string to_json(const LaurentPoly<double>& p);
std::string pretty(const RationalPoly& p);

struct NewtonPolygon {
    std::vector<IVec2> vertices;   // counterclockwise, starting at the lexicographic minimum
    std::vector<IVec2> boundary;   // lattice points on edges, including vertices
    std::vector<IVec2> interior;   // lattice points strictly inside
    bool contains(IVec2 p) const;  // closed polygon membership
    bool contains(Vec2 p, double tol = 1e-9) const;
};

NewtonPolygon newton_polygon_of(std::vector<IVec2> support);

template <class T> NewtonPolygon newton_polygon(const LaurentPoly<T>& p) {
    if (p.empty()) throw Error("newton_polygon: zero polynomial");
    std::vector<IVec2> pts;
    for (const auto& [e, c] : p.terms) pts.push_back(e);
    return newton_polygon_of(std::move(pts));
}

// Recovers a Laurent polynomial from evaluations when its support is known to
// lie in the box [lo, hi]. Exact version interpolates at integer nodes.
RationalPoly interpolate_exact(const std::function<Rational(const Rational&, const Rational&)>& f, IVec2 lo,
                               IVec2 hi);
// Floating version: inverse discrete Fourier transform over roots of unity.
LaurentPoly<double> interpolate_dft(const std::function<Complex(Complex, Complex)>& f, IVec2 lo, IVec2 hi,
                                    double drop_below = 1e-9);

}  // namespace dimers
