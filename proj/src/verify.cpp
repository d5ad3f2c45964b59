#include "dimers/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>

#include <boost/math/distributions/binomial.hpp>

#include "dimers/height.hpp"
#include "dimers/laplacian.hpp"
#include "dimers/linalg.hpp"
#include "dimers/sampler.hpp"
#include "dimers/temperley.hpp"

namespace dimers {

using nlohmann::json;

const std::vector<ManifestEntry>& verify_manifest() {
    static const std::vector<ManifestEntry> m = {
        {"bijection", "Temperley map and its inverse are mutual inverses and weight preserving"},
        {"partition_function", "signed combination of the four twisted determinants equals Z"},
        {"height_sum", "height-change expansion equals det K(z, w) up to a monomial"},
        {"height_homology", "height change equals (-n, m)(k - k1 - k2) for every configuration"},
        {"laplacian_factorization", "K M has the Laplacians on its diagonal blocks (Laplacian = d* d)"},
        {"block_form", "lower-left block of K M vanishes"},
        {"kernel_inverse", "(K^-1)^V times the Laplacian equals d"},
        {"forman", "det of the bundle Laplacian equals the cycle-rooted forest sum"},
        {"laplacian_characteristic", "det K equals a monomial times det of the Laplacian"},
        {"edge_kernel", "determinantal edge probabilities equal enumerated frequencies"},
        {"green_matrix", "B_N equals (K^-1)^V D_N"},
        {"zero_slope", "E[h] vanishes at zero field"},
    };
    return m;
}

namespace {

template <class F> CheckResult timed(std::string name, std::string identity, F&& body) {
    CheckResult r;
    r.name = std::move(name);
    r.identity = std::move(identity);
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail["error"] = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string label(const std::string& what, int n) { return what + " n=" + std::to_string(n); }

std::string str(const Rational& q) { return to_string(q); }

struct DartStats {
    Rational total = 0;
    std::map<int, Rational> single;
    std::map<std::pair<int, int>, Rational> pair;
};

DartStats dart_stats(const DoubleGraph& d, const std::function<Rational(const DimerConfig&)>& weight) {
    DartStats s;
    for (const auto& m : enumerate_dimers(d)) {
        Rational wt = weight(m);
        s.total += wt;
        auto f = dimer_to_forest(d, m);
        std::vector<int> darts;
        for (int dart : f.primal.out)
            if (dart >= 0) darts.push_back(dart);
        for (int a : darts) {
            s.single[a] += wt;
            for (int b : darts)
                if (a < b) s.pair[{a, b}] += wt;
        }
    }
    return s;
}

// Compares every single and pair probability against the enumeration.
template <class P> void compare_kernel(const DartStats& s, int darts, P&& prob, CheckResult& r) {
    int checked = 0, mismatched = 0, out_of_range = 0;
    for (int a = 0; a < darts; ++a) {
        Rational p = prob(std::vector<int>{a});
        Rational e = s.single.count(a) ? s.single.at(a) / s.total : Rational(0);
        ++checked;
        if (p != e) ++mismatched;
        if (p < 0 || p > 1) ++out_of_range;
        for (int b = a + 1; b < darts; ++b) {
            Rational q = prob(std::vector<int>{a, b});
            Rational eq = s.pair.count({a, b}) ? s.pair.at({a, b}) / s.total : Rational(0);
            ++checked;
            if (q != eq) ++mismatched;
            if (q < 0 || q > 1) ++out_of_range;
        }
    }
    r.detail = {{"checked", checked}, {"mismatched", mismatched}, {"out_of_range", out_of_range}};
    r.passed = mismatched == 0 && out_of_range == 0;
}

// Chronological erasure: cut each loop as soon as it closes.
std::vector<int> chronological_erase(const std::vector<int>& path) {
    std::vector<int> out;
    for (int v : path) {
        auto it = std::find(out.begin(), out.end(), v);
        if (it != out.end()) out.erase(it + 1, out.end());
        else out.push_back(v);
    }
    return out;
}

}  // namespace

CheckResult check_bijection(const PeriodicGraph& g, int n) {
    return timed(label("bijection", n), "bijection", [&](CheckResult& r) {
        auto t = build_quotient(g, n);
        auto dg = build_double(t);
        auto ms = enumerate_dimers(dg);
        int round_trip = 0, weight_mismatch = 0;
        Rational z = 0, zp = 0;
        for (const auto& m : ms) {
            auto p = dimer_to_forest(dg, m);
            check_pair(dg, p);
            auto back = forest_to_dimer(dg, p);
            if (back.halves != m.halves) ++round_trip;
            if (p.weight != m.weight || back.weight != m.weight) ++weight_mismatch;
            z += m.weight;
        }
        auto ps = enumerate_ocrsf_pairs(t);
        std::set<std::vector<int>> images;
        for (const auto& p : ps) {
            auto m = forest_to_dimer(dg, p);
            if (m.weight != p.weight) ++weight_mismatch;
            if (dimer_to_forest(dg, m).primal.out != p.primal.out) ++round_trip;
            images.insert(m.halves);
            zp += p.weight;
        }
        r.detail = {{"matchings", ms.size()},     {"pairs", ps.size()},         {"distinct_images", images.size()},
                    {"round_trip_failures", round_trip}, {"weight_mismatches", weight_mismatch},
                    {"Z_dimers", str(z)},         {"Z_pairs", str(zp)}};
        r.passed = !ms.empty() && round_trip == 0 && weight_mismatch == 0 && ps.size() == ms.size() &&
                   images.size() == ms.size() && z == zp;
    });
}

CheckResult check_partition(const PeriodicGraph& g, int n) {
    return timed(label("partition", n), "partition_function", [&](CheckResult& r) {
        auto t = torus_setup(g, n);
        auto pf = partition_function(t.dg, t.orientation, t.markers, predicted_pattern(kasteleyn_gauge(t)));
        Rational z = 0;
        for (const auto& m : enumerate_dimers(t.dg)) z += m.weight;
        json dets = json::array();
        for (const auto& d : pf.dets) dets.push_back(str(d));
        json pattern = json::array();
        for (int s : pf.pattern) pattern.push_back(s);
        r.detail = {{"Z_determinants", str(pf.value)}, {"Z_enumerated", str(z)}, {"dets", dets}, {"pattern", pattern}};
        r.passed = pf.value == z;
    });
}

CheckResult check_height_sum(const PeriodicGraph& g, int n, int points, std::uint64_t seed) {
    return timed(label("height_sum", n), "height_sum", [&](CheckResult& r) {
        auto t = torus_setup(g, n);
        auto ms = enumerate_dimers(t.dg);
        std::vector<IVec2> hs;
        for (const auto& m : ms) hs.push_back(height_change(t.dg, m));
        auto gauge = align_gauge(char_poly(t.dg, t.orientation, t.markers), height_expansion(t.dg));
        if (!gauge) {
            r.detail["error"] = "no monomial gauge between det K and the height expansion";
            return;
        }
        auto sum_at = [&](auto z, auto w) {
            using S = decltype(z);
            S acc(0);
            for (size_t i = 0; i < ms.size(); ++i) {
                IVec2 h = hs[i];
                int sgn = ((h.x * h.y + h.x + h.y) & 1) ? -1 : 1;
                acc += scalar_cast<S>(ms[i].weight) * S(sgn) * ipow(z, -h.x) * ipow(w, -h.y);
            }
            return S(gauge->sign) * ipow(z, gauge->shift.x) * ipow(w, gauge->shift.y) * acc;
        };

        double worst = 0;
        RandomStream rng(seed, 0);
        for (int k = 0; k < points; ++k) {
            auto draw = [&] {
                return std::polar(std::exp(rng.uniform() - 0.5), 2 * std::numbers::pi * rng.uniform());
            };
            Complex z = draw(), w = draw();
            Complex det = determinant(kasteleyn_matrix(t.dg, t.orientation, t.markers, z, w));
            Complex lhs = sum_at(z, w);
            worst = std::max(worst, std::abs(lhs - det) / std::max(std::abs(det), 1e-300));
        }
        int exact_points = 0, exact_failures = 0;
        for (auto [z, w] : {std::pair{Rational(1, 2), Rational(3)}, std::pair{Rational(-2, 5), Rational(7, 4)},
                            std::pair{Rational(5, 3), Rational(-1, 6)}, std::pair{Rational(1), Rational(1)}}) {
            ++exact_points;
            if (sum_at(z, w) != determinant(kasteleyn_matrix(t.dg, t.orientation, t.markers, z, w))) ++exact_failures;
        }
        r.detail = {{"float_points", points},
                    {"max_rel_error", worst},
                    {"tolerance", float_rel_tolerance},
                    {"exact_points", exact_points},
                    {"exact_failures", exact_failures},
                    {"gauge", {{"sign", gauge->sign}, {"shift", {gauge->shift.x, gauge->shift.y}}}}};
        r.passed = worst <= float_rel_tolerance && exact_failures == 0;
    });
}

CheckResult check_height_homology(const PeriodicGraph& g, int n) {
    return timed(label("height_homology", n), "height_homology", [&](CheckResult& r) {
        auto rep = height_homology_report(build_double(build_quotient(g, n)));
        r.detail = json::parse(rep.to_json());
        r.passed = rep.total > 0 && rep.passed == rep.total;
    });
}

CheckResult check_forman(const PeriodicGraph& g, int n) {
    return timed(label("forman", n), "forman", [&](CheckResult& r) {
        auto t = build_quotient(g, n);
        auto p = choose_dual_paths(t);
        auto rep = verify_forman(t, connection_from(t, p, Rational(2, 3), Rational(-5, 4)));
        r.detail = {{"forests", rep.forests}, {"exact", rep.exact}, {"z", "2/3"}, {"w", "-5/4"}};
        r.passed = rep.exact && rep.forests > 0;
    });
}

CheckResult check_laplacian_determinant(const PeriodicGraph& g, int n) {
    return timed(label("laplacian_determinant", n), "laplacian_characteristic", [&](CheckResult& r) {
        auto rep = verify_laplacian_determinant(g, n);
        auto t = torus_setup(g, n);
        r.detail = {{"gauge_found", rep.gauge.has_value()},
                    {"laplacian_equals_height_expansion", rep.laplacian_matches_heights},
                    {"grouped_form_matches", rep.grouped_form_matches},
                    {"sign_checks", rep.sign_checks},
                    {"sign_failures", rep.sign_failures},
                    {"max_rel_error", rep.max_rel_error},
                    {"det_laplacian", json::parse(to_json(laplacian_char_poly(t.dg.host, t.paths)))}};
        if (rep.gauge) r.detail["gauge"] = {{"sign", rep.gauge->sign}, {"shift", {rep.gauge->shift.x, rep.gauge->shift.y}}};
        r.passed = rep.gauge && rep.laplacian_matches_heights && rep.grouped_form_matches && rep.sign_failures == 0 &&
                   rep.max_rel_error <= float_rel_tolerance;
    });
}

namespace {

json block_json(const BlockReport& b) {
    return {{"zero_block", b.zero_block},         {"primal_block", b.primal_block},
            {"dual_block", b.dual_block},         {"corner_max", b.corner_max},
            {"singular", b.singular},             {"inverse_residual", b.inverse_residual},
            {"exact_zero", b.exact_zero}};
}

}  // namespace

CheckResult check_torus_blocks(const PeriodicGraph& g, int n) {
    return timed(label("torus_blocks", n), "block_form", [&](CheckResult& r) {
        auto t = torus_setup(g, n);
        auto b = verify_block_identity(t.dg, t.orientation, t.markers, Rational(2, 3), Rational(5, 7));
        r.detail = block_json(b);
        r.passed = b.exact_zero && !b.singular;
    });
}

CheckResult check_wired_blocks(const PeriodicGraph& g, int n) {
    return timed(label("wired_blocks", n), "kernel_inverse", [&](CheckResult& r) {
        auto w = build_wired(g, n);
        auto d = build_double(w);
        auto b = verify_block_identity(d, orient(d), no_markers(d), Rational(1), Rational(1));
        r.detail = block_json(b);
        r.passed = b.exact_zero && !b.singular && b.inverse_residual == 0;
    });
}

CheckResult check_torus_kernel(const PeriodicGraph& g, int n) {
    return timed(label("torus_kernel", n), "edge_kernel", [&](CheckResult& r) {
        TorusKernel k(g, n);
        const auto& dg = k.setup().dg;
        auto s = dart_stats(dg, [](const DimerConfig& m) { return m.weight; });
        compare_kernel(s, dg.host.num_darts(), [&](const std::vector<int>& d) { return k.probability(d); }, r);
    });
}

CheckResult check_wired_kernel(const PeriodicGraph& g, int n) {
    return timed(label("wired_kernel", n), "edge_kernel", [&](CheckResult& r) {
        WiredKernel k(build_wired(g, n));
        auto s = dart_stats(k.graph(), [](const DimerConfig& m) { return m.weight; });
        compare_kernel(s, k.graph().host.num_darts(), [&](const std::vector<int>& d) { return k.probability(d); }, r);
        int undirected = 0;
        for (int e = 0; e < k.graph().host.num_edges(); ++e)
            if (k.undirected_probability({e}) != k.probability({2 * e}) + k.probability({2 * e + 1})) ++undirected;
        r.detail["undirected_mismatches"] = undirected;
        r.passed = r.passed && undirected == 0;
    });
}

CheckResult check_green_matrix(const PeriodicGraph& g, int n) {
    return timed(label("green_matrix", n), "green_matrix", [&](CheckResult& r) {
        auto w = build_wired(g, n);
        WiredKernel k(w);
        auto b = green_matrix<Rational>(w);
        auto deg = out_weights<Rational>(w.graph);
        const int P = int(deg.size());
        auto expected = k.inverse().block(0, 0, k.inverse().rows(), P);
        for (int i = 0; i < expected.rows(); ++i)
            for (int j = 0; j < P; ++j) expected(i, j) *= deg[j];
        r.detail = {{"rows", b.rows()}, {"cols", b.cols()}};
        r.passed = b.cols() == P && b == expected;
    });
}

CheckResult check_green_monte_carlo(const PeriodicGraph& g, int n, int walks, std::uint64_t seed) {
    return timed(label("green_monte_carlo", n), "green_matrix", [&](CheckResult& r) {
        auto w = build_wired(g, n);
        auto b = green_matrix<double>(w);
        auto est = estimate_visits(w.graph, walks, seed);
        auto dg = build_double(w);
        auto o = orient(dg);
        int outside = 0, total = 0, zero_se_mismatch = 0;
        double worst_z = 0;
        for (int e = 0; e < dg.num_white; ++e)
            for (int v = 0; v < b.cols(); ++v) {
                double mc = 0, var = 0;
                for (int role = 0; role < 2; ++role) {
                    int h = 4 * e + role;
                    int row = dg.row_of_black[dg.half[h].black];
                    if (row < 0) continue;
                    mc += o.sign[h] * est.mean(row, v);
                    var += est.sem(row, v) * est.sem(row, v);
                }
                ++total;
                double se = std::sqrt(var), diff = std::abs(mc - b(e, v));
                if (se == 0) {
                    if (diff > 1e-12) ++zero_se_mismatch;
                    continue;
                }
                worst_z = std::max(worst_z, diff / se);
                if (diff > 3 * se) ++outside;
            }
        // Under exact agreement each entry leaves 3 SE with probability ~0.0027.
        boost::math::binomial_distribution<double> chance(total, 0.0027);
        int allowed = int(boost::math::quantile(chance, 0.999));
        r.detail = {{"walks", walks},        {"seed", seed},       {"entries", total},
                    {"outside_3se", outside}, {"allowed", allowed}, {"zero_se_mismatches", zero_se_mismatch},
                    {"max_z", worst_z},       {"unabsorbed", est.unabsorbed}};
        r.passed = outside <= allowed && zero_se_mismatch == 0 && est.unabsorbed == 0;
    });
}

CheckResult check_wilson(const PeriodicGraph& g, int n, long long samples, std::uint64_t seed, double significance) {
    return timed(label("wilson", n), "wilson", [&](CheckResult& r) {
        auto w = build_wired(g, n);
        auto exact = tree_distribution(w);
        auto c = chi_square(wilson_counts(w.graph, samples, seed), exact);
        r.detail = {{"samples", samples}, {"seed", seed},       {"trees", exact.size()},
                    {"chi2", c.statistic}, {"dof", c.dof},        {"p_value", c.p_value},
                    {"significance", significance}, {"total_variation", c.total_variation}};
        r.passed = c.p_value > significance;
    });
}

CheckResult check_loop_erase(const PeriodicGraph& g, int n, int walks, std::uint64_t seed) {
    return timed(label("loop_erase", n), "wilson", [&](CheckResult& r) {
        auto w = build_wired(g, n);
        const auto& gr = w.graph;
        int oracle = 0, idempotence = 0, repeated = 0;
        for (int i = 0; i < walks; ++i) {
            RandomStream rng(seed, i);
            std::vector<int> path{int(rng() % (gr.num_vertices() - 1))};
            while (path.back() != gr.root) {
                const auto& rot = gr.rotation[path.back()];
                path.push_back(gr.head(rot[rng() % rot.size()]));
            }
            auto erased = loop_erase(path, gr);
            if (erased != chronological_erase(path)) ++oracle;
            if (loop_erase(erased) != erased) ++idempotence;
            std::vector<int> sorted = erased;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) ++repeated;
        }
        r.detail = {{"walks", walks},
                    {"seed", seed},
                    {"oracle_mismatches", oracle},
                    {"idempotence_failures", idempotence},
                    {"repeated_vertices", repeated}};
        r.passed = oracle == 0 && idempotence == 0 && repeated == 0;
    });
}

CheckResult check_zero_slope(const PeriodicGraph& g, const std::vector<int>& ns) {
    return timed("zero_slope", "zero_slope", [&](CheckResult& r) {
        auto est = slope_estimate(g, {}, ns);
        r.passed = true;
        r.detail["per_n"] = json::array();
        for (const auto& t : est.per_n) {
            const auto& s = *t.exact;
            r.detail["per_n"].push_back({{"n", t.n}, {"slope", {str(s[0]), str(s[1])}}});
            if (s[0] != 0 || s[1] != 0) r.passed = false;
        }
        // Infinite-volume slope (minus the Ronkin gradient) at B = 0, for reference only.
        auto p = to_double(phase_polynomial(g));
        auto a = amoeba_membership(p, 0, 0);
        r.detail["ronkin_slope_at_0"] = {a.slope().x + 0.0, a.slope().y + 0.0};
    });
}

CheckResult check_root_order(const PeriodicGraph& g) {
    return timed("root_order", "root_order", [&](CheckResult& r) {
        auto p = phase_polynomial(g);
        Rational gx = 0, gy = 0;
        for (const auto& [e, c] : p.terms) {
            gx += c * e.x;
            gy += c * e.y;
        }
        int order = root_order_at_11(p);
        bool flat = gx == 0 && gy == 0;
        r.detail = {{"order", order}, {"gradient", {str(gx), str(gy)}}, {"polynomial", pretty(p)}};
        r.passed = (order == 2) == flat && order >= 1;
    });
}

CheckResult check_phase_scan(const PeriodicGraph& g, const ScanGrid& grid, int expected_bounded) {
    return timed("phase_scan", "phase", [&](CheckResult& r) {
        auto s = phase_scan(phase_polynomial(g), grid);
        bool constant = true, origin = expected_bounded == 0;
        json comps = json::array();
        for (const auto& c : s.components) {
            constant = constant && c.slope_constant;
            if (c.bounded && c.near_origin) origin = true;
            comps.push_back({{"id", c.id},
                             {"order", {c.order.x, c.order.y}},
                             {"cells", c.cells},
                             {"bounded", c.bounded},
                             {"touches_border", c.touches_border},
                             {"slope_constant", c.slope_constant},
                             {"near_origin", c.near_origin}});
        }
        r.detail = {{"grid", {grid.nx, grid.ny}},
                    {"window", {grid.x0, grid.x1, grid.y0, grid.y1}},
                    {"bounded_components", s.bounded_components()},
                    {"expected_bounded", expected_bounded},
                    {"components", comps}};
        r.passed = s.bounded_components() == expected_bounded && constant && origin;
    });
}

CheckResult check_connectivity_trend(const PeriodicGraph& g, int n, const Rational& z, const Rational& w) {
    return timed(label("connectivity_trend", n), "connectivity", [&](CheckResult& r) {
        auto t = torus_setup(g, n);
        auto [v1, v2] = designated_pair(t.dg.host, n);
        auto zero = exact_stats(t, 1, 1, v1, v2);
        auto field = exact_stats(t, z, w, v1, v2);
        auto slope = HeightSpectrum(g, n).exact_slope(z, w);
        bool tilted = slope[0] != 0 || slope[1] != 0;
        bool crossing = zero.e_hx == zero.e_cross_x && zero.e_hy == zero.e_cross_y && field.e_hx == field.e_cross_x &&
                        field.e_hy == field.e_cross_y;
        r.detail = {{"z", str(z)},
                    {"w", str(w)},
                    {"v1", v1},
                    {"v2", v2},
                    {"P_connect_zero_field", str(zero.p_connect)},
                    {"P_connect_field", str(field.p_connect)},
                    {"slope_field", {str(slope[0]), str(slope[1])}},
                    {"E_h_zero_field", {str(zero.e_hx), str(zero.e_hy)}},
                    {"E_h_field", {str(field.e_hx), str(field.e_hy)}},
                    {"E_cross_field", {str(field.e_cross_x), str(field.e_cross_y)}}};
        r.passed = tilted && field.p_connect < zero.p_connect && crossing;
    });
}

bool SuiteReport::passed() const {
    return uncovered.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

json SuiteReport::to_json() const {
    json out = {{"passed", passed()}, {"uncovered", uncovered}, {"checks", json::array()}};
    for (const auto& c : checks)
        out["checks"].push_back(
            {{"name", c.name}, {"identity", c.identity}, {"passed", c.passed}, {"seconds", c.seconds}, {"detail", c.detail}});
    return out;
}

SuiteReport run_verify_suite(const PeriodicGraph& g) {
    SuiteReport s;
    for (int n : {1, 2}) {
        s.checks.push_back(check_bijection(g, n));
        s.checks.push_back(check_partition(g, n));
        s.checks.push_back(check_height_sum(g, n));
        s.checks.push_back(check_height_homology(g, n));
        s.checks.push_back(check_forman(g, n));
        s.checks.push_back(check_laplacian_determinant(g, n));
        s.checks.push_back(check_torus_blocks(g, n));
        s.checks.push_back(check_torus_kernel(g, n));
    }
    for (int n : {3, 4}) {
        s.checks.push_back(check_wired_blocks(g, n));
        s.checks.push_back(check_wired_kernel(g, n));
        s.checks.push_back(check_green_matrix(g, n));
    }
    s.checks.push_back(check_zero_slope(g));
    // The block checks cover the factorization through their primal and dual blocks.
    std::set<std::string> covered;
    for (const auto& c : s.checks) {
        covered.insert(c.identity);
        if (c.identity == "block_form" || c.identity == "kernel_inverse") covered.insert("laplacian_factorization");
        if (c.identity == "kernel_inverse") covered.insert("block_form");
    }
    for (const auto& m : verify_manifest())
        if (!covered.count(m.identity)) s.uncovered.push_back(m.identity);
    return s;
}

}  // namespace dimers
