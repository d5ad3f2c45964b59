#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimers/lattice.hpp"
#include "dimers/phase.hpp"

namespace dimers {

struct CheckResult {
    std::string name;      // e.g. "bijection n=2"
    std::string identity;  // manifest key
    bool passed = false;
    nlohmann::json detail;
    double seconds = 0;
};

// Identities the verify suite must cover, with a one-line description each.
struct ManifestEntry {
    std::string identity;
    std::string description;
};
const std::vector<ManifestEntry>& verify_manifest();

constexpr double float_rel_tolerance = 1e-9;

// Torus checks (complete enumeration of the n-torus).
CheckResult check_bijection(const PeriodicGraph& g, int n);
CheckResult check_partition(const PeriodicGraph& g, int n);
// Height-change sum against det K at `points` complex points and a few rational ones.
CheckResult check_height_sum(const PeriodicGraph& g, int n, int points = 16, std::uint64_t seed = 1);
CheckResult check_height_homology(const PeriodicGraph& g, int n);
CheckResult check_forman(const PeriodicGraph& g, int n);
CheckResult check_laplacian_determinant(const PeriodicGraph& g, int n);
CheckResult check_torus_blocks(const PeriodicGraph& g, int n);
CheckResult check_torus_kernel(const PeriodicGraph& g, int n);

// Wired checks.
CheckResult check_wired_blocks(const PeriodicGraph& g, int n);
CheckResult check_wired_kernel(const PeriodicGraph& g, int n);
CheckResult check_green_matrix(const PeriodicGraph& g, int n);
// Entries outside 3 SE may not exceed the 0.999 binomial quantile for their count.
CheckResult check_green_monte_carlo(const PeriodicGraph& g, int n, int walks, std::uint64_t seed);
CheckResult check_wilson(const PeriodicGraph& g, int n, long long samples, std::uint64_t seed,
                         double significance = 0.001);
CheckResult check_loop_erase(const PeriodicGraph& g, int n, int walks, std::uint64_t seed);

// Phase and field checks.
CheckResult check_zero_slope(const PeriodicGraph& g, const std::vector<int>& ns = {1, 2});
CheckResult check_root_order(const PeriodicGraph& g);
// Expected bounded component count and whether one of them must touch B = 0.
CheckResult check_phase_scan(const PeriodicGraph& g, const ScanGrid& grid, int expected_bounded);
CheckResult check_connectivity_trend(const PeriodicGraph& g, int n, const Rational& z, const Rational& w);

struct SuiteReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> uncovered;  // manifest identities with no check
    bool passed() const;
    nlohmann::json to_json() const;
};

// Tori n in {1, 2}, wired n in {3, 4}, plus the zero-field slope.
SuiteReport run_verify_suite(const PeriodicGraph& g);

}  // namespace dimers
