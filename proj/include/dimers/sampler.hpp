#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dimers/kasteleyn.hpp"
#include "dimers/temperley.hpp"

namespace dimers {

// Last-exit loop erasure. With a graph, consecutive vertices must be adjacent.
std::vector<int> loop_erase(const std::vector<int>& path);
std::vector<int> loop_erase(const std::vector<int>& path, const EmbeddedGraph& g);

// Spanning tree oriented towards the root: out[v] is v's parent dart, -1 at the root.
struct SampledTree {
    std::vector<int> out;
    double weight = 1;
};

enum class ScanOrder { LowestFirst, HighestFirst };

SampledTree wilson_sample(const EmbeddedGraph& g, RandomStream& rng, ScanOrder order = ScanOrder::LowestFirst);
SampledTree wilson_sample(const WiredGraph& w, std::uint64_t seed);

// Sample i uses stream (seed, i); counts are keyed by the parent-dart vector.
using TreeCounts = std::map<std::vector<int>, long long>;
TreeCounts wilson_counts(const EmbeddedGraph& g, long long samples, std::uint64_t seed, bool parallel = true,
                         ScanOrder order = ScanOrder::LowestFirst);

struct ChiSquare {
    double statistic = 0;
    int dof = 0;
    double p_value = 1;
    double total_variation = 0;
};
// Observed counts against probabilities (categories missing from `observed` count as 0).
ChiSquare chi_square(const TreeCounts& observed, const std::map<std::vector<int>, double>& probability);
// Exact tree law of a wired graph by enumeration.
std::map<std::vector<int>, double> tree_distribution(const WiredGraph& w);

// Magnetic field: configuration weights times exp(-N (B_x h_x + B_y h_y)).
struct Field {
    double bx = 0;
    double by = 0;
};

class ExactTorusSampler {
public:
    ExactTorusSampler(const TorusSetup& t, Field b, long long cap = default_enumeration_cap);
    const OcrsfPair& sample(RandomStream& rng) const;
    const std::vector<OcrsfPair>& pairs() const { return pairs_; }
    const std::vector<double>& probabilities() const { return prob_; }

private:
    std::vector<OcrsfPair> pairs_;
    std::vector<double> prob_;
    std::vector<double> cumulative_;
};
OcrsfPair exact_torus_sample(const TorusSetup& t, Field b, std::uint64_t seed);

// Height change read from the cycles: -(1/2)(signed gamma crossings of the
// primal cycles + the same count for the dual cycles, via their classes).
IVec2 crossing_height(const EmbeddedGraph& t, const DualPaths& p, const OcrsfPair& pair);

// Components of the primal forest (undirected).
std::vector<int> forest_components(const EmbeddedGraph& t, const OrientedForest& f);

struct ConnectivityStats {
    Field b;
    int n = 0;
    double e_k = 0;
    double e_hx = 0;
    double e_hy = 0;
    double e_cross_x = 0;  // crossing_height expectation
    double e_cross_y = 0;
    double p_connect = 0;
    long long n_samples = 0;  // 0 for exhaustive sums
    std::uint64_t seed = 0;
    int v1 = 0;
    int v2 = 0;
};

// Exact sums over all configurations; rational when z, w are rational.
struct ExactStats {
    Rational total;
    Rational e_k, e_hx, e_hy, e_cross_x, e_cross_y, p_connect;
};
ExactStats exact_stats(const TorusSetup& t, const Rational& z, const Rational& w, int v1, int v2);

// v1 is the base vertex in cell (0,0), v2 the same base vertex in cell (n/2, n/2).
std::pair<int, int> designated_pair(const EmbeddedGraph& t, int n);

ConnectivityStats connectivity_stats(const PeriodicGraph& g, int n, Field b);
ConnectivityStats connectivity_stats(const PeriodicGraph& g, int n, Field b, long long samples, std::uint64_t seed,
                                     bool parallel = true);
std::string stats_csv_header();
std::string stats_csv_row(const ConnectivityStats& s);

}  // namespace dimers
