// One PASS/FAIL line per acceptance criterion; details for failing checks follow.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include "dimers/laplacian.hpp"
#include "dimers/verify.hpp"

using namespace dimers;

namespace {

// Pinned parameters.
constexpr double limit_bijection = 10, limit_partition = 5, limit_height = 30, limit_laplacian = 30;
constexpr double limit_kernel = 60, limit_wilson = 300, limit_green = 300, limit_slope = 10;
constexpr double limit_phase = 600, limit_trend = 60;
constexpr long long wilson_samples = 1'000'000;
constexpr double wilson_significance = 0.001;
constexpr int loop_erase_walks = 10'000;
constexpr int green_walks = 100'000;
constexpr int height_points = 16;
constexpr std::uint64_t seed = 20240611;

struct Criterion {
    int id;
    std::string summary;
    double limit;
    std::function<std::vector<CheckResult>()> run;
};

std::vector<PeriodicGraph> pair_of_graphs() { return {uniform_grid(), drifted_grid(1, 2, 3, 4)}; }

CheckResult named(const PeriodicGraph& g, CheckResult r) {
    r.name = g.name + (g.name == "drifted" ? "(1,2,3,4)" : "") + " " + r.name;
    return r;
}

RationalPoly uniform_symbol() {
    RationalPoly p;
    p.add({0, 0}, 4);
    for (IVec2 e : {IVec2{1, 0}, IVec2{-1, 0}, IVec2{0, 1}, IVec2{0, -1}}) p.add(e, -1);
    return p;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({1, "bijection and weights on n=1,2 tori", limit_bijection, [] {
                            std::vector<CheckResult> out;
                            for (const auto& g : pair_of_graphs())
                                for (int n : {1, 2}) out.push_back(named(g, check_bijection(g, n)));
                            return out;
                        }});

    criteria.push_back({2, "four-determinant Z equals enumerated Z, uniform n=1 gives 8", limit_partition, [] {
                            std::vector<CheckResult> out;
                            for (const auto& g : pair_of_graphs())
                                for (int n : {1, 2}) out.push_back(named(g, check_partition(g, n)));
                            auto& u1 = out[0];
                            bool eight = u1.passed && u1.detail["Z_determinants"] == "8";
                            u1.detail["uniform_n1_is_8"] = eight;
                            u1.passed = eight;
                            return out;
                        }});

    criteria.push_back({3, "height sum equals P at 16 points, homology formula for every configuration",
                        limit_height, [] {
                            std::vector<CheckResult> out;
                            for (const auto& g : pair_of_graphs())
                                for (int n : {1, 2}) {
                                    out.push_back(named(g, check_height_sum(g, n, height_points, seed)));
                                    out.push_back(named(g, check_height_homology(g, n)));
                                }
                            return out;
                        }});

    criteria.push_back({4, "Laplacian factorization, block form, inverse identity, Forman, det K vs det Laplacian",
                        limit_laplacian, [] {
                            std::vector<CheckResult> out;
                            for (const auto& g : pair_of_graphs()) {
                                for (int n : {1, 2}) {
                                    out.push_back(named(g, check_torus_blocks(g, n)));
                                    out.push_back(named(g, check_forman(g, n)));
                                    out.push_back(named(g, check_laplacian_determinant(g, n)));
                                }
                                for (int n : {3, 4}) out.push_back(named(g, check_wired_blocks(g, n)));
                            }
                            CheckResult u;
                            u.name = "uniform n=1 both sides equal 4 - z - 1/z - w - 1/w";
                            auto t = torus_setup(uniform_grid(), 1);
                            auto lap = laplacian_char_poly(t.dg.host, t.paths);
                            auto gauge = kasteleyn_gauge(t);
                            auto det = char_poly(t.dg, t.orientation, t.markers);
                            auto scaled = det.shifted(-gauge.shift).scaled(Rational(gauge.sign));
                            u.passed = lap == uniform_symbol() && scaled == uniform_symbol();
                            u.detail = {{"det_laplacian", pretty(lap)},
                                        {"det_K", pretty(det)},
                                        {"gauge", {{"sign", gauge.sign}, {"shift", {gauge.shift.x, gauge.shift.y}}}}};
                            out.push_back(u);
                            return out;
                        }});

    criteria.push_back({5, "wired n=3,4 single and pair edge probabilities equal enumeration", limit_kernel, [] {
                            std::vector<CheckResult> out;
                            for (const auto& g : pair_of_graphs())
                                for (int n : {3, 4}) out.push_back(named(g, check_wired_kernel(g, n)));
                            return out;
                        }});

    criteria.push_back({6, "Wilson chi-square at 0.001 with 1e6 samples on wired 3x3; loop erasure on 1e4 walks",
                        limit_wilson, [] {
                            std::vector<CheckResult> out;
                            for (const auto& g : pair_of_graphs())
                                out.push_back(named(g, check_wilson(g, 3, wilson_samples, seed, wilson_significance)));
                            for (const auto& g : pair_of_graphs())
                                out.push_back(named(g, check_loop_erase(g, 5, loop_erase_walks, seed)));
                            return out;
                        }});

    criteria.push_back({7, "B_N = (K^-1)^V D_N exactly on wired 3..5; Monte Carlo within 3 SE at 1e5 walks",
                        limit_green, [] {
                            std::vector<CheckResult> out;
                            for (const auto& g : pair_of_graphs())
                                for (int n : {3, 4, 5}) {
                                    out.push_back(named(g, check_green_matrix(g, n)));
                                    out.push_back(named(g, check_green_monte_carlo(g, n, green_walks, seed + n)));
                                }
                            return out;
                        }});

    criteria.push_back({8, "slope_estimate(B=0) = (0,0) exactly at N=1,2; root order 2 iff a=c and b=d",
                        limit_slope, [] {
                            std::vector<CheckResult> out;
                            for (const auto& g : pair_of_graphs()) out.push_back(named(g, check_zero_slope(g)));
                            CheckResult family;
                            family.name = "drifted family root order";
                            family.passed = true;
                            int cases = 0;
                            for (int a = 1; a <= 3; ++a)
                                for (int b = 1; b <= 3; ++b)
                                    for (int c = 1; c <= 3; ++c)
                                        for (int d = 1; d <= 3; ++d) {
                                            int order = root_order_at_11(phase_polynomial(drifted_grid(a, b, c, d)));
                                            ++cases;
                                            if ((order == 2) != (a == c && b == d)) {
                                                family.passed = false;
                                                family.detail["mismatch"].push_back({a, b, c, d, order});
                                            }
                                        }
                            family.detail["cases"] = cases;
                            out.push_back(family);
                            return out;
                        }});

    criteria.push_back({9, "64x64 scan over [-3,3]^2: one gaseous component touching B=0 for (1,2,3,4), none for (1,2,1,2)",
                        limit_phase, [] {
                            ScanGrid grid;
                            return std::vector<CheckResult>{
                                named(drifted_grid(1, 2, 3, 4), check_phase_scan(drifted_grid(1, 2, 3, 4), grid, 1)),
                                named(drifted_grid(1, 2, 1, 2), check_phase_scan(drifted_grid(1, 2, 1, 2), grid, 0))};
                        }});

    criteria.push_back({10, "drifted n=2: P[v1<->v2] drops under a tilting field; E[h] equals the crossing count",
                        limit_trend, [] {
                            auto g = drifted_grid(1, 2, 3, 4);
                            return std::vector<CheckResult>{
                                named(g, check_connectivity_trend(g, 2, Rational(1), Rational(4)))};
                        }});

    bool all = true;
    nlohmann::json report = nlohmann::json::array();
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        auto checks = c.run();
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = dt <= c.limit && std::all_of(checks.begin(), checks.end(), [](const auto& r) { return r.passed; });
        all = all && ok;
        std::printf("criterion %2d: %s  %s (%.2f s, limit %.0f s)\n", c.id, ok ? "PASS" : "FAIL", c.summary.c_str(), dt,
                    c.limit);
        nlohmann::json entry = {{"criterion", c.id}, {"passed", ok}, {"seconds", dt}, {"checks", nlohmann::json::array()}};
        for (const auto& r : checks) {
            entry["checks"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
            if (!r.passed) std::printf("    failed: %s %s\n", r.name.c_str(), r.detail.dump().c_str());
        }
        std::fflush(stdout);
        report.push_back(entry);
    }
    std::ofstream("acceptance_report.json") << report.dump(2) << "\n";
    return all ? 0 : 1;
}
