#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dimers/height.hpp"
#include "dimers/kasteleyn.hpp"

namespace dimers {

// Parallel transport per dart, from its tail to its head; reversal inverts.
template <class T> struct Connection {
    std::vector<T> transport;
};

template <class T> Connection<T> trivial_connection(const EmbeddedGraph& g);
// z (resp. w) on darts crossing gamma_x (resp. gamma_y) from left to right, with
// the paths traversed against their stored direction. This makes det equal the
// height expansion exactly.
template <class T> Connection<T> connection_from(const EmbeddedGraph& g, const DualPaths& p, const T& z, const T& w);
// Connections read off the Kasteleyn markers: transport a -> b is t(b)/t(a)
// with t the marker monomial of the half-edge at each end.
template <class T> struct MarkerConnections {
    Connection<T> primal;
    Connection<T> dual;  // on build_dual(host), darts share ids with the host
};
template <class T> MarkerConnections<T> marker_connections(const DoubleGraph& d, const Markers& m, const T& z, const T& w);

// Product of the transports along the reversed darts: the factor a cycle
// contributes to the Laplacian determinant.
template <class T> T monodromy(const Connection<T>& c, const std::vector<int>& darts);

// Rows/columns for every vertex except `drop` (-1 keeps all).
template <class T> Matrix<T> laplacian_matrix(const EmbeddedGraph& g, const Connection<T>& c, int drop);
template <class T> Matrix<T> laplacian_matrix(const EmbeddedGraph& g, const Connection<T>& c) {
    return laplacian_matrix(g, c, g.root);
}

template <class T> struct IncidenceOps {
    Matrix<T> d, dstar;            // edges x primal rows, primal rows x edges
    Matrix<T> d_dual, dstar_dual;  // edges x dual rows, dual rows x edges
};
template <class T>
IncidenceOps<T> incidence_ops(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m, const T& z,
                              const T& w);
// M = (d  d_dual), columns in Kasteleyn row order.
template <class T>
Matrix<T> m_matrix(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m, const T& z, const T& w);

struct FormanReport {
    double max_error = 0;
    bool exact = false;
    int forests = 0;
};
// det of the Laplacian against the cycle-rooted forest expansion at (z, w).
template <class T> FormanReport verify_forman(const TorusGraph& t, const Connection<T>& c);

struct LaplacianDeterminantReport {
    std::optional<Gauge> gauge;   // det K = gauge * det Laplacian
    bool laplacian_matches_heights = false;
    bool grouped_form_matches = false;
    int sign_checks = 0;
    int sign_failures = 0;
    double max_rel_error = 0;     // float check at random unit-torus points
};
LaplacianDeterminantReport verify_laplacian_determinant(const PeriodicGraph& g, int n, int float_points = 16, std::uint64_t seed = 1);

RationalPoly laplacian_char_poly(const TorusGraph& t, const DualPaths& p);
// Cycle-rooted forest expansion grouped by homology.
RationalPoly grouped_forest_poly(const TorusGraph& t);

struct BlockReport {
    double zero_block = 0;       // max |(K M) lower-left|
    double primal_block = 0;     // max |(K M) upper-left - Laplacian|
    double dual_block = 0;       // max |(K M) lower-right - dual Laplacian|
    double corner_max = 0;       // entrywise quad cancellations
    bool singular = false;
    double inverse_residual = 0; // max |(K^-1)^V Laplacian - d|, when K is invertible
    bool exact_zero = false;     // every residual above is exactly 0 (rational mode)
};
template <class T>
BlockReport verify_block_identity(const DoubleGraph& d, const KasteleynOrientation& o, const Markers& m, const T& z,
                                  const T& w);

// Determinantal probabilities of directed edges (host darts) in the tree or
// OCRSF measure. Darts sharing an edge or a starting point give 0.
class WiredKernel {
public:
    explicit WiredKernel(const WiredGraph& w);
    Rational probability(const std::vector<int>& darts) const;
    Rational undirected_probability(const std::vector<int>& edges) const;
    const DoubleGraph& graph() const { return dg_; }
    const Matrix<Rational>& inverse() const { return kinv_; }
    const Matrix<Rational>& kasteleyn() const { return k_; }
    const KasteleynOrientation& orientation() const { return o_; }

private:
    DoubleGraph dg_;
    KasteleynOrientation o_;
    Matrix<Rational> k_, kinv_;
};

class TorusKernel {
public:
    // Weights carry z^-h_x w^-h_y for a magnetic field; (1, 1) is the plain measure.
    TorusKernel(const PeriodicGraph& g, int n, const Rational& z = 1, const Rational& w = 1);
    Rational probability(const std::vector<int>& darts) const;
    const TorusSetup& setup() const { return t_; }
    const Rational& partition() const { return z_; }
    const SignPattern& pattern() const { return pattern_; }

private:
    TorusSetup t_;
    SignPattern pattern_;
    std::array<Matrix<Rational>, 4> k_;
    Rational field_z_, field_w_;
    Rational z_;
};

// Monomial gauge between det K(z, w) and the height expansion, via the
// Laplacian determinant (no enumeration needed).
Gauge kasteleyn_gauge(const TorusSetup& t);

// Out-weight sums of the interior vertices.
template <class T> std::vector<T> out_weights(const EmbeddedGraph& g);

// B_N solving B D^-1 Laplacian = d on the wired graph (rows: whites, cols: interior vertices).
template <class T> Matrix<T> green_matrix(const WiredGraph& w);

struct VisitEstimate {
    Matrix<double> mean;   // start x target expected visits before absorption
    Matrix<double> sem;
    long long unabsorbed = 0;
};
constexpr long long walk_step_cap = 1'000'000;
// Killed random walks from every interior start; `parallel` splits starts across threads.
VisitEstimate estimate_visits(const EmbeddedGraph& g, int walks, std::uint64_t seed, bool parallel = true);

struct ProbeRow {
    int n = 0;
    int distance = 0;
    double max_abs_entry = 0;
    std::string verdict;
};
std::vector<ProbeRow> star_condition_probe(const PeriodicGraph& g, const std::vector<int>& sizes, int radius);
std::string probe_csv(const std::vector<ProbeRow>& rows);

}  // namespace dimers
