#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimers/height.hpp"
#include "dimers/laplacian.hpp"
#include "dimers/linalg.hpp"
#include "dimers/phase.hpp"
#include "dimers/sampler.hpp"
#include "dimers/temperley.hpp"
#include "dimers/verify.hpp"

using namespace dimers;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string spec;
    int n = 1;
    double bx = 0, by = 0;
    std::string z = "1", w = "1";  // exact evaluation point
    std::uint64_t seed = 1;
    long long samples = 0;
    bool exact = false;
    bool raw = false;
    bool serial = false;
    std::string out;
    std::string report;
    std::string plot;
    double window = 3;
    int resolution = 64;
    int torus_samples = default_phase_samples;
    std::vector<int> sizes{8, 12, 16};
    int radius = 4;
};

class Failure : public std::runtime_error {
public:
    Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

PeriodicGraph load(const RunConfig& c) {
    std::ifstream in(c.spec);
    if (!in) throw Failure(2, "lattice: cannot open " + c.spec);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_graph_spec(ss.str());
    } catch (const std::exception& e) {
        throw Failure(2, std::string("lattice: ") + e.what());
    }
}

void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Failure(2, "cannot write " + c.out);
    f << text;
}

void echo(const std::string& command, const RunConfig& c) {
    std::cerr << "dimers " << DIMERS_VERSION << " " << command << " seed=" << c.seed << "\n";
}

Rational rational_arg(const std::string& s, const char* flag) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw Failure(2, std::string(flag) + " must be rational in exact mode, got " + s);
    }
}

int cmd_verify(const RunConfig& c) {
    auto g = load(c);
    auto report = run_verify_suite(g);
    emit(c, report.to_json().dump(2) + "\n");
    for (const auto& r : report.checks)
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.seconds << " s)\n";
    for (const auto& u : report.uncovered) std::cerr << "UNCOVERED " << u << "\n";
    return report.passed() ? 0 : 1;
}

int cmd_charpoly(const RunConfig& c) {
    auto t = torus_setup(load(c), c.n);
    // Default output divides out the Kasteleyn gauge, leaving the height expansion.
    Gauge g = kasteleyn_gauge(t);
    if (c.exact) {
        auto p = char_poly(t.dg, t.orientation, t.markers);
        p = c.raw ? normalize_sign(p) : p.shifted(-g.shift).scaled(Rational(g.sign));
        emit(c, to_json(p) + "\n");
    } else {
        auto p = char_poly_float(t.dg, t.orientation, t.markers);
        if (!c.raw) p = p.shifted(-g.shift).scaled(double(g.sign));
        emit(c, to_json(p) + "\n");
    }
    return 0;
}

int cmd_partition(const RunConfig& c) {
    auto t = torus_setup(load(c), c.n);
    auto pattern = predicted_pattern(kasteleyn_gauge(t));
    json out = {{"n", c.n}, {"pattern", pattern}};
    if (c.exact) {
        Rational z = rational_arg(c.z, "--z"), w = rational_arg(c.w, "--w");
        std::array<Rational, 4> dets;
        json js = json::array();
        for (int i = 0; i < 4; ++i) {
            dets[i] = determinant(kasteleyn_matrix(t.dg, t.orientation, t.markers, i & 2 ? -z : z, i & 1 ? -w : w));
            js.push_back(to_string(dets[i]));
        }
        out.update({{"mode", "exact"}, {"z", to_string(z)}, {"w", to_string(w)}, {"dets", js},
                    {"Z", to_string(combine(dets, pattern))}});
    } else {
        double z = std::exp(c.n * c.bx), w = std::exp(c.n * c.by);
        double total = 0;
        json js = json::array();
        for (int i = 0; i < 4; ++i) {
            double d = determinant(kasteleyn_matrix(t.dg, t.orientation, t.markers, i & 2 ? -z : z, i & 1 ? -w : w));
            js.push_back(d);
            total += pattern[i] * d;
        }
        out.update({{"mode", "float"}, {"B", {c.bx, c.by}}, {"dets", js}, {"Z", total / 2}});
    }
    emit(c, out.dump() + "\n");
    return 0;
}

int cmd_enumerate(const RunConfig& c) {
    auto dg = build_double(build_quotient(load(c), c.n));
    std::string lines;
    for (const auto& m : enumerate_dimers(dg)) lines += config_dump_line(dg, m) + "\n";
    emit(c, lines);
    auto rep = height_homology_report(dg);
    if (!c.report.empty()) std::ofstream(c.report) << rep.to_json() << "\n";
    std::cerr << "height report: " << rep.passed << "/" << rep.total << " passed\n";
    return rep.passed == rep.total ? 0 : 1;
}

int cmd_sample_wilson(const RunConfig& c) {
    echo("sample-wilson", c);
    auto w = build_wired(load(c), c.n);
    long long samples = c.samples > 0 ? c.samples : 100000;
    auto counts = wilson_counts(w.graph, samples, c.seed, !c.serial);
    auto exact = tree_distribution(w);
    std::string out =
        json{{"version", DIMERS_VERSION}, {"seed", c.seed}, {"samples", samples}, {"n", c.n}}.dump() + "\n";
    for (const auto& [tree, p] : exact) {
        auto it = counts.find(tree);
        out += json{{"parent_darts", tree}, {"count", it == counts.end() ? 0 : it->second}, {"probability", p}}.dump() +
               "\n";
    }
    auto chi = chi_square(counts, exact);
    out += json{{"chi2", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}, {"tv", chi.total_variation}}
               .dump() +
           "\n";
    emit(c, out);
    return 0;
}

int cmd_sample_torus(const RunConfig& c) {
    echo("sample-torus", c);
    auto t = torus_setup(load(c), c.n);
    ExactTorusSampler sampler(t, {c.bx, c.by});
    long long samples = c.samples > 0 ? c.samples : 10;
    std::string out =
        json{{"version", DIMERS_VERSION}, {"seed", c.seed}, {"samples", samples}, {"n", c.n}, {"B", {c.bx, c.by}}}
            .dump() +
        "\n";
    for (long long i = 0; i < samples; ++i) {
        RandomStream rng(c.seed, std::uint64_t(i));
        const auto& p = sampler.sample(rng);
        IVec2 h = height_change(t.dg, forest_to_dimer(t.dg, p));
        out += json{{"primal", p.primal.out},
                    {"dual", p.dual.out},
                    {"k", primal_cycles(t.dg.host, p.primal).size()},
                    {"h", {h.x, h.y}}}
                   .dump() +
               "\n";
    }
    emit(c, out);
    return 0;
}

int cmd_stats(const RunConfig& c) {
    echo("stats", c);
    auto g = load(c);
    if (c.exact) {
        auto t = torus_setup(g, c.n);
        auto [v1, v2] = designated_pair(t.dg.host, c.n);
        Rational z = rational_arg(c.z, "--z"), w = rational_arg(c.w, "--w");
        auto s = exact_stats(t, z, w, v1, v2);
        emit(c, json{{"n", c.n},
                     {"z", to_string(z)},
                     {"w", to_string(w)},
                     {"Z", to_string(s.total)},
                     {"E_k", to_string(s.e_k)},
                     {"E_hx", to_string(s.e_hx)},
                     {"E_hy", to_string(s.e_hy)},
                     {"E_cross_x", to_string(s.e_cross_x)},
                     {"E_cross_y", to_string(s.e_cross_y)},
                     {"P_connect", to_string(s.p_connect)}}
                         .dump() +
                    "\n");
        return 0;
    }
    Field b{c.bx, c.by};
    auto s = c.samples > 0 ? connectivity_stats(g, c.n, b, c.samples, c.seed, !c.serial) : connectivity_stats(g, c.n, b);
    emit(c, stats_csv_header() + stats_csv_row(s));
    return 0;
}

int cmd_scan(const RunConfig& c) {
    echo("scan", c);
    auto p = phase_polynomial(load(c));
    ScanGrid grid;
    grid.x0 = grid.y0 = -c.window;
    grid.x1 = grid.y1 = c.window;
    grid.nx = grid.ny = c.resolution;
    grid.samples = c.torus_samples;
    auto s = phase_scan(p, grid, !c.serial);
    emit(c, scan_csv(s));
    std::string plot = !c.plot.empty() ? c.plot : (c.out.empty() ? "" : c.out + ".polylines");
    if (!plot.empty()) std::ofstream(plot) << boundary_polylines(s);
    std::cerr << "components: " << s.components.size() << ", bounded (gaseous): " << s.bounded_components() << "\n";
    for (const auto& comp : s.components) {
        std::cerr << "  #" << comp.id << " order (" << comp.order.x << "," << comp.order.y << ") cells " << comp.cells
                  << (comp.bounded ? " gaseous" : " frozen");
        // The zero-slope gaseous region is the candidate tree phase, subject to Green-matrix decay.
        if (comp.bounded && comp.order == IVec2{0, 0}) std::cerr << " tree phase (conditional on Green decay)";
        std::cerr << "\n";
    }
    return 0;
}

int cmd_probe_star(const RunConfig& c) {
    auto rows = star_condition_probe(load(c), c.sizes, c.radius);
    emit(c, probe_csv(rows));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dimers, spanning forests and phases on periodic planar graphs"};
    app.set_version_flag("--version", std::string(DIMERS_VERSION));
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&](CLI::App* s) {
        s->add_option("--spec", c.spec, "Graph spec (JSON)")->required()->check(CLI::ExistingFile);
        s->add_option("--n", c.n, "Torus period or wired grid size")->check(CLI::PositiveNumber);
        s->add_option("--out", c.out, "Output file (stdout if absent)");
    };
    auto field = [&](CLI::App* s) {
        s->add_option("--bx", c.bx, "Magnetic field, x");
        s->add_option("--by", c.by, "Magnetic field, y");
    };
    auto point = [&](CLI::App* s) {
        s->add_flag("--exact", c.exact, "Rational arithmetic");
        s->add_option("--z", c.z, "Rational z for exact mode");
        s->add_option("--w", c.w, "Rational w for exact mode");
    };
    auto sampling = [&](CLI::App* s) {
        s->add_option("--seed", c.seed, "Random seed");
        s->add_option("--samples", c.samples, "Sample count");
        s->add_flag("--serial", c.serial, "Disable OpenMP (same output)");
    };

    std::vector<std::pair<CLI::App*, std::function<int(const RunConfig&)>>> commands;
    auto add = [&](const char* name, const char* help, std::function<int(const RunConfig&)> f) {
        auto* s = app.add_subcommand(name, help);
        common(s);
        commands.emplace_back(s, std::move(f));
        return s;
    };

    add("verify", "Run the identity suite on n = 1, 2 tori and wired n = 3, 4", cmd_verify);
    auto* charpoly = add("charpoly", "Characteristic polynomial as JSON", cmd_charpoly);
    charpoly->add_flag("--exact", c.exact, "Rational interpolation");
    charpoly->add_flag("--raw", c.raw, "Print det K itself (sign-normalized) instead of dividing out the gauge");
    auto* partition = add("partition", "Partition function from the four twisted determinants", cmd_partition);
    point(partition);
    field(partition);
    auto* enumerate = add("enumerate", "Dump all dimer configurations as JSON lines", cmd_enumerate);
    enumerate->add_option("--report", c.report, "Height report path");
    sampling(add("sample-wilson", "Wilson's algorithm on the wired grid", cmd_sample_wilson));
    auto* torus = add("sample-torus", "Exact sampling of torus OCRSF pairs", cmd_sample_torus);
    sampling(torus);
    field(torus);
    auto* stats = add("stats", "Connectivity and height statistics", cmd_stats);
    sampling(stats);
    field(stats);
    point(stats);
    auto* scan = add("scan", "Phase diagram scan", cmd_scan);
    scan->add_option("--window", c.window, "Half-width of the B window");
    scan->add_option("--res", c.resolution, "Grid points per axis");
    scan->add_option("--torus-samples", c.torus_samples, "Unit-torus samples per axis");
    scan->add_option("--plot", c.plot, "Boundary polylines path");
    scan->add_option("--seed", c.seed, "Echoed only; the scan is deterministic");
    scan->add_flag("--serial", c.serial, "Disable OpenMP (same output)");
    auto* probe = add("probe-star", "Green-matrix decay probe", cmd_probe_star);
    probe->add_option("--sizes", c.sizes, "Wired grid sizes")->delimiter(',');
    probe->add_option("--radius", c.radius, "Largest distance");

    CLI11_PARSE(app, argc, argv);
    try {
        for (auto& [s, f] : commands)
            if (s->parsed()) return f(c);
    } catch (const Failure& e) {
        std::cerr << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
