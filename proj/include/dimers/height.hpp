#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dimers/laurent.hpp"
#include "dimers/temperley.hpp"

namespace dimers {

// Angular height per quad of the double graph (radians). On a torus quad q is
// stored for the copy at translation copy[q]; other copies follow from `change`.
struct HeightFunction {
    int base = 0;
    std::vector<double> height;
    std::vector<IVec2> copy;
    std::optional<IVec2> change;  // normalized (h_x, h_y), periodic case only
    double closedness_error = 0;

    double at(int q, IVec2 t) const;
};

enum class Propagation { Bfs, Dfs };

// Quads touching removed blacks are left out (height NaN).
HeightFunction height_function(const DoubleGraph& d, const DimerConfig& m, int base = 0,
                               Propagation order = Propagation::Bfs);
// Diagonal turning angle when crossing unmatched half-edge h from its right quad to its left quad.
double crossing_angle(const DoubleGraph& d, int h);
IVec2 height_change(const DoubleGraph& d, const DimerConfig& m);

struct HomologyData {
    IVec2 mn;
    int k = 0;
    int k1 = 0;
    int k2 = 0;
};

IVec2 normalize_class(IVec2 c);
HomologyData homology_data(const EmbeddedGraph& host, const OcrsfPair& p);
// (-n (k - k1 - k2), m (k - k1 - k2))
IVec2 predicted_height_change(const HomologyData& h);

struct HeightFailure {
    int config = 0;
    IVec2 expected;
    IVec2 got;
};

struct HeightReport {
    int total = 0;
    int passed = 0;
    std::vector<HeightFailure> failures;
    std::string to_json() const;
};

HeightReport height_homology_report(const DoubleGraph& d, long long cap = default_enumeration_cap);

// Sum over matchings of weight z^-h_x w^-h_y (-1)^(h_x h_y + h_x + h_y).
RationalPoly height_expansion(const DoubleGraph& d, long long cap = default_enumeration_cap);

// Left turns minus right turns along consecutive directions.
double winding(const std::vector<Vec2>& directions);
double branch_winding(const EmbeddedGraph& g, const std::vector<int>& darts);
// Vertex path version; throws when consecutive vertices are not adjacent by a unique edge.
double branch_winding(const EmbeddedGraph& g, const std::vector<int>& vertices, bool by_vertex);

struct KpwCheck {
    int branches = 0;
    double max_error = 0;
};
// Planar check on a wired double graph: along every co-oriented branch,
// winding = (h - alpha)(last) - (h - alpha)(first).
KpwCheck check_kpw(const DoubleGraph& d, const DimerConfig& m);

// One JSON line {edges, weight, homology, k, k1, k2}.
std::string config_dump_line(const DoubleGraph& d, const DimerConfig& m);

}  // namespace dimers
