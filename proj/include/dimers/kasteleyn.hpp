#pragma once

#include <array>
#include <vector>

#include "dimers/lattice.hpp"
#include "dimers/laurent.hpp"
#include "dimers/linalg.hpp"

namespace dimers {

// Sign per half-edge: +1 when the double-graph edge points black -> white.
struct KasteleynOrientation {
    std::vector<int> sign;
};

// Primal edges oriented from the lower to the higher vertex id (stored
// direction for loops), flipped where `flip[e]` is set; dual edges from the
// left of the primal edge to its right.
KasteleynOrientation orient(const DoubleGraph& d, const std::vector<char>& flip);
KasteleynOrientation orient(const DoubleGraph& d);
// Quads whose boundary, traversed clockwise, has an even number of co-oriented edges.
std::vector<int> odd_rule_violations(const DoubleGraph& d, const KasteleynOrientation& o);

// Exponents of (z, w) per half-edge.
struct Markers {
    std::vector<IVec2> exp;
};
Markers no_markers(const DoubleGraph& d);
// The paths are pushed to their right; a crossed half-edge gets 1/z (resp. 1/w)
// when its white end lies on the left of the pushed path and z when its black
// end does.
Markers markers_from(const DoubleGraph& d, const DualPaths& paths);

template <class T>
Matrix<T> kasteleyn_matrix(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m, const T& z,
                           const T& w);
extern template Matrix<Rational> kasteleyn_matrix(const DoubleGraph&, const KasteleynOrientation&, const Markers&,
                                                  const Rational&, const Rational&);
extern template Matrix<double> kasteleyn_matrix(const DoubleGraph&, const KasteleynOrientation&, const Markers&,
                                                const double&, const double&);
extern template Matrix<Complex> kasteleyn_matrix(const DoubleGraph&, const KasteleynOrientation&, const Markers&,
                                                 const Complex&, const Complex&);

// Rigorous exponent box of det K(z, w).
std::pair<IVec2, IVec2> degree_box(const DoubleGraph& d, const Markers& m);

// det K(z, w) as a Laurent polynomial, by exact interpolation.
RationalPoly char_poly(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m);
// Same by inverse DFT over roots of unity.
LaurentPoly<double> char_poly_float(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m);

// Index 2 * theta + tau.
using SignPattern = std::array<int, 4>;

struct PartitionFunction {
    std::array<Rational, 4> dets;  // det K^(theta,tau) = det K((-1)^theta, (-1)^tau)
    SignPattern pattern;
    Rational value;
};

Rational combine(const std::array<Rational, 4>& dets, const SignPattern& s);
std::array<Rational, 4> theta_tau_determinants(const DoubleGraph& d, const KasteleynOrientation& o,
                                                const Markers& m);
// Patterns with one or three minus signs that reproduce `z`.
std::vector<SignPattern> calibrate_patterns(const std::array<Rational, 4>& dets, const Rational& z);
// Pattern predicted from the monomial gauge `g` relating det K(z, w) to the
// height expansion: sign * (-1)^(theta a + tau b) * (-1, +1, +1, +1).
SignPattern predicted_pattern(const Gauge& g);
PartitionFunction partition_function(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m,
                                     const SignPattern& s);

struct TorusSetup {
    DoubleGraph dg;
    DualPaths paths;
    KasteleynOrientation orientation;
    Markers markers;
};
TorusSetup torus_setup(const PeriodicGraph& g, int n);

}  // namespace dimers
