#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimers/kasteleyn.hpp"
#include "dimers/sampler.hpp"

namespace dimers {

// Total configuration weight per height change on the n-torus.
class HeightSpectrum {
public:
    HeightSpectrum(const PeriodicGraph& g, int n, long long cap = default_enumeration_cap);
    int n() const { return n_; }
    const std::map<IVec2, Rational>& weights() const { return weights_; }
    // E[h] / n under weights exp(-n B.h).
    Vec2 slope(Field b) const;
    // Same with z^-h_x w^-h_y, exactly.
    std::array<Rational, 2> exact_slope(const Rational& z, const Rational& w) const;

private:
    int n_;
    std::map<IVec2, Rational> weights_;
};

struct SlopeTrend {
    int n = 0;
    Vec2 slope;
    std::optional<std::array<Rational, 2>> exact;  // at B = 0
};

struct SlopeEstimate {
    std::vector<SlopeTrend> per_n;
    Vec2 slope;         // largest n
    double error = 0;   // max component gap between the two largest n
};

SlopeEstimate slope_estimate(const PeriodicGraph& g, Field b, const std::vector<int>& ns = {1, 2});

// 1 if the gradient at (1,1) is nonzero, 2 otherwise. Throws when P(1,1) != 0.
int root_order_at_11(const RationalPoly& p);

// Height expansion of the one-cell torus (det of its Laplacian at the crossing connection).
RationalPoly phase_polynomial(const PeriodicGraph& g);

constexpr double amoeba_tolerance = 1e-7;
constexpr int default_phase_samples = 256;

struct AmoebaPoint {
    bool inside = false;
    double min_abs = 0;
    // Mean winding numbers in z and w over the torus; integers off the amoeba,
    // where they give the order of the complement component.
    Vec2 winding;
    IVec2 order;
    // Limiting slope, minus the Ronkin gradient.
    Vec2 slope() const { return -1.0 * winding; }
};

AmoebaPoint amoeba_membership(const LaurentPoly<double>& p, double x, double y, int m = default_phase_samples);

enum class Phase { Liquid, Gaseous, Frozen };
std::string to_string(Phase p);

struct ScanGrid {
    double x0 = -3, x1 = 3, y0 = -3, y1 = 3;
    int nx = 64, ny = 64;
    int samples = default_phase_samples;
    double x(int i) const { return x0 + (i + 0.5) * (x1 - x0) / nx; }
    double y(int j) const { return y0 + (j + 0.5) * (y1 - y0) / ny; }
};

struct ScanPoint {
    double bx = 0, by = 0;
    Phase phase = Phase::Liquid;
    Vec2 slope;
    double min_abs = 0;
    int component = -1;  // -1 inside the amoeba
};

struct ComponentInfo {
    int id = 0;
    IVec2 order;
    int cells = 0;
    bool touches_border = false;
    bool bounded = false;         // confirmed on the doubled window
    bool slope_constant = true;
    bool near_origin = false;     // within one grid diagonal of B = 0
};

struct ScanResult {
    ScanGrid grid;
    std::vector<ScanPoint> points;  // row-major, By outer
    std::vector<ComponentInfo> components;
    int bounded_components() const;
};

ScanResult phase_scan(const RationalPoly& p, const ScanGrid& grid, bool parallel = true);
std::string scan_csv(const ScanResult& s);
// Amoeba boundary by marching squares: one polyline per line, "x,y x,y ...".
std::string boundary_polylines(const ScanResult& s);

}  // namespace dimers
