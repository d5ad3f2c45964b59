#pragma once

#include <vector>

#include "dimers/lattice.hpp"

namespace dimers {

// Perfect matching of a double graph, as sorted half-edge ids.
struct DimerConfig {
    std::vector<int> halves;
    Rational weight;
};

// out[v] is the dart leaving v (host darts for the primal forest, dual dart
// ids for the dual forest); -1 marks a root.
struct OrientedForest {
    std::vector<int> out;
};

struct ForestCycle {
    std::vector<int> darts;
    IVec2 cls;  // homology class of the cycle
};

struct OcrsfPair {
    OrientedForest primal;
    OrientedForest dual;
    Rational weight;
};

// Period jump of a dual dart (id d, from face(d) to face(twin d)).
IVec2 dual_wrap(const EmbeddedGraph& host, int d);
int dual_head(const EmbeddedGraph& host, int d);

std::vector<ForestCycle> primal_cycles(const EmbeddedGraph& host, const OrientedForest& f);
std::vector<ForestCycle> dual_cycles(const EmbeddedGraph& host, const OrientedForest& f);

// Throws Error when the pair is not an OCRSF pair (torus) or a pair of
// rooted spanning trees (wired host).
void check_pair(const DoubleGraph& d, const OcrsfPair& p);

DimerConfig forest_to_dimer(const DoubleGraph& d, const OcrsfPair& p);
OcrsfPair dimer_to_forest(const DoubleGraph& d, const DimerConfig& m);

// All dual OCRSFs not crossing `f` with the same number of parallel cycles.
std::vector<OrientedForest> duals_of(const TorusGraph& t, const OrientedForest& f);

constexpr long long default_enumeration_cap = 10'000'000;

// Backtracking over white vertices; lexicographic order on half-edge lists.
std::vector<DimerConfig> enumerate_dimers(const DoubleGraph& d, long long cap = default_enumeration_cap);
std::vector<OcrsfPair> enumerate_ocrsf_pairs(const TorusGraph& t, long long cap = default_enumeration_cap);

}  // namespace dimers
