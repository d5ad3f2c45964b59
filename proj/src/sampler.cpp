#include "dimers/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "dimers/height.hpp"
#include "dimers/laplacian.hpp"

namespace dimers {

namespace {

// Step indices kept by the last-exit rule: u_{j+1} = v_{k+1} with k the last
// visit of u_j. The final vertex is always kept.
std::vector<int> last_exit_steps(const std::vector<int>& path, std::vector<int>& last) {
    for (size_t i = 0; i < path.size(); ++i) last[path[i]] = int(i);
    std::vector<int> steps;
    for (int i = 0; i + 1 < int(path.size());) {
        int k = last[path[i]];
        if (k + 1 >= int(path.size())) break;
        steps.push_back(k);
        i = k + 1;
    }
    return steps;
}

std::vector<int> erase_with(const std::vector<int>& path, std::vector<int>& last) {
    if (path.empty()) return {};
    std::vector<int> out{path[0]};
    for (int k : last_exit_steps(path, last)) out.push_back(path[k + 1]);
    return out;
}

IVec2 rotate(IVec2 v) { return {-v.y, v.x}; }

int find(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

}  // namespace

std::vector<int> loop_erase(const std::vector<int>& path) {
    int top = path.empty() ? 0 : *std::max_element(path.begin(), path.end()) + 1;
    if (!path.empty() && *std::min_element(path.begin(), path.end()) < 0) throw Error("loop_erase: negative vertex");
    std::vector<int> last(top, -1);
    return erase_with(path, last);
}

std::vector<int> loop_erase(const std::vector<int>& path, const EmbeddedGraph& g) {
    for (size_t i = 0; i < path.size(); ++i) {
        if (path[i] < 0 || path[i] >= g.num_vertices()) throw Error("loop_erase: vertex out of range");
        if (i == 0) continue;
        const auto& rot = g.rotation[path[i - 1]];
        if (std::none_of(rot.begin(), rot.end(), [&](int d) { return g.head(d) == path[i]; }))
            throw Error("loop_erase: consecutive vertices are not adjacent");
    }
    return loop_erase(path);
}

SampledTree wilson_sample(const EmbeddedGraph& g, RandomStream& rng, ScanOrder order) {
    if (g.root < 0) throw Error("wilson_sample: graph has no root");
    const int n = g.num_vertices();
    std::vector<std::vector<double>> cumulative(n);
    for (int v = 0; v < n; ++v) {
        if (v == g.root) continue;
        double acc = 0;
        for (int d : g.rotation[v]) cumulative[v].push_back(acc += to_double(g.weight(d)));
        if (cumulative[v].empty() || acc <= 0) throw Error("wilson_sample: vertex without positive out-weight");
    }
    SampledTree t;
    t.out.assign(n, -1);
    std::vector<char> in_tree(n, 0);
    in_tree[g.root] = 1;
    std::vector<int> last(n, -1), path, darts;
    for (int i = 0; i < n; ++i) {
        int start = order == ScanOrder::LowestFirst ? i : n - 1 - i;
        if (in_tree[start]) continue;
        path.assign(1, start);
        darts.clear();
        long long steps = 0;
        for (int v = start; !in_tree[v];) {
            if (++steps > walk_step_cap) throw Error("wilson_sample: walk step budget exceeded");
            const auto& cum = cumulative[v];
            double x = rng.uniform() * cum.back();
            int pick = std::min(int(std::upper_bound(cum.begin(), cum.end(), x) - cum.begin()), int(cum.size()) - 1);
            int d = g.rotation[v][pick];
            darts.push_back(d);
            v = g.head(d);
            path.push_back(v);
        }
        for (int k : last_exit_steps(path, last)) {
            t.out[path[k]] = darts[k];
            in_tree[path[k]] = 1;
            t.weight *= to_double(g.weight(darts[k]));
        }
        for (int v : path) last[v] = -1;
    }
    return t;
}

SampledTree wilson_sample(const WiredGraph& w, std::uint64_t seed) {
    RandomStream rng(seed, 0);
    return wilson_sample(w.graph, rng);
}

TreeCounts wilson_counts(const EmbeddedGraph& g, long long samples, std::uint64_t seed, bool parallel,
                         ScanOrder order) {
    TreeCounts total;
#pragma omp parallel if (parallel)
    {
        TreeCounts local;
#pragma omp for schedule(static)
        for (long long i = 0; i < samples; ++i) {
            RandomStream rng(seed, std::uint64_t(i));
            ++local[wilson_sample(g, rng, order).out];
        }
#pragma omp critical
        for (const auto& [tree, c] : local) total[tree] += c;
    }
    return total;
}

ChiSquare chi_square(const TreeCounts& observed, const std::map<std::vector<int>, double>& probability) {
    long long n = 0;
    for (const auto& [tree, c] : observed) {
        if (!probability.count(tree)) throw Error("chi_square: observed a category with zero probability");
        n += c;
    }
    if (n == 0) throw Error("chi_square: no observations");
    ChiSquare r;
    for (const auto& [tree, p] : probability) {
        if (p <= 0) continue;
        auto it = observed.find(tree);
        double o = it == observed.end() ? 0.0 : double(it->second);
        double e = p * double(n);
        r.statistic += (o - e) * (o - e) / e;
        r.total_variation += 0.5 * std::abs(o / double(n) - p);
        ++r.dof;
    }
    --r.dof;
    r.p_value = r.dof > 0 ? boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic) : 1.0;
    return r;
}

std::map<std::vector<int>, double> tree_distribution(const WiredGraph& w) {
    auto dg = build_double(w);
    std::map<std::vector<int>, Rational> weights;
    Rational total = 0;
    for (const auto& m : enumerate_dimers(dg)) {
        weights[dimer_to_forest(dg, m).primal.out] += m.weight;
        total += m.weight;
    }
    std::map<std::vector<int>, double> out;
    for (const auto& [tree, wt] : weights) out[tree] = to_double(wt / total);
    return out;
}

ExactTorusSampler::ExactTorusSampler(const TorusSetup& t, Field b, long long cap) {
    const auto configs = enumerate_dimers(t.dg, cap);
    const int n = t.dg.host.period;
    std::vector<double> logw;
    for (const auto& m : configs) {
        if (m.weight == 0) continue;
        IVec2 h = height_change(t.dg, m);
        pairs_.push_back(dimer_to_forest(t.dg, m));
        logw.push_back(std::log(to_double(m.weight)) - n * (b.bx * h.x + b.by * h.y));
    }
    if (pairs_.empty()) throw Error("ExactTorusSampler: no configuration with positive weight");
    double top = *std::max_element(logw.begin(), logw.end());
    double sum = 0;
    for (double lw : logw) sum += std::exp(lw - top);
    for (double lw : logw) prob_.push_back(std::exp(lw - top) / sum);
    cumulative_.resize(prob_.size());
    std::partial_sum(prob_.begin(), prob_.end(), cumulative_.begin());
}

const OcrsfPair& ExactTorusSampler::sample(RandomStream& rng) const {
    double x = rng.uniform() * cumulative_.back();
    size_t i = std::upper_bound(cumulative_.begin(), cumulative_.end(), x) - cumulative_.begin();
    return pairs_[std::min(i, pairs_.size() - 1)];
}

OcrsfPair exact_torus_sample(const TorusSetup& t, Field b, std::uint64_t seed) {
    ExactTorusSampler s(t, b);
    RandomStream rng(seed, 0);
    return s.sample(rng);
}

IVec2 crossing_height(const EmbeddedGraph& t, const DualPaths& p, const OcrsfPair& pair) {
    IVec2 total;
    for (const auto& c : primal_cycles(t, pair.primal))
        for (int d : c.darts) {
            int s = EmbeddedGraph::forward(d) ? 1 : -1;
            total += IVec2{s * p.cross[d >> 1][0], s * p.cross[d >> 1][1]};
        }
    for (const auto& c : dual_cycles(t, pair.dual)) total += rotate(c.cls);
    if (total.x % 2 || total.y % 2) throw Error("crossing_height: odd crossing total");
    return {-total.x / 2, -total.y / 2};
}

std::vector<int> forest_components(const EmbeddedGraph& t, const OrientedForest& f) {
    std::vector<int> parent(t.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    for (int v = 0; v < t.num_vertices(); ++v)
        if (f.out[v] >= 0) parent[find(parent, v)] = find(parent, t.head(f.out[v]));
    std::vector<int> comp(t.num_vertices());
    for (int v = 0; v < t.num_vertices(); ++v) comp[v] = find(parent, v);
    return comp;
}

std::pair<int, int> designated_pair(const EmbeddedGraph& t, int n) {
    int v1 = -1, v2 = -1;
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (t.base_vertex[v] != 0) continue;
        if (t.vertex_cell[v] == IVec2{0, 0}) v1 = v;
        if (t.vertex_cell[v] == IVec2{n / 2, n / 2}) v2 = v;
    }
    if (v1 < 0 || v2 < 0) throw Error("designated_pair: vertices not found");
    return {v1, v2};
}

ExactStats exact_stats(const TorusSetup& t, const Rational& z, const Rational& w, int v1, int v2) {
    const auto& host = t.dg.host;
    ExactStats s{0, 0, 0, 0, 0, 0, 0};
    for (const auto& m : enumerate_dimers(t.dg)) {
        IVec2 h = height_change(t.dg, m);
        Rational wt = m.weight * ipow(z, -h.x) * ipow(w, -h.y);
        auto pair = dimer_to_forest(t.dg, m);
        IVec2 c = crossing_height(host, t.paths, pair);
        auto comp = forest_components(host, pair.primal);
        s.total += wt;
        s.e_k += wt * int(primal_cycles(host, pair.primal).size());
        s.e_hx += wt * h.x;
        s.e_hy += wt * h.y;
        s.e_cross_x += wt * c.x;
        s.e_cross_y += wt * c.y;
        if (comp[v1] == comp[v2]) s.p_connect += wt;
    }
    for (Rational* x : {&s.e_k, &s.e_hx, &s.e_hy, &s.e_cross_x, &s.e_cross_y, &s.p_connect}) *x /= s.total;
    return s;
}

namespace {

struct PairValues {
    double k, hx, hy, cx, cy, connected;
};

PairValues values_of(const TorusSetup& t, const OcrsfPair& pair, int v1, int v2) {
    const auto& host = t.dg.host;
    IVec2 h = height_change(t.dg, forest_to_dimer(t.dg, pair));
    IVec2 c = crossing_height(host, t.paths, pair);
    auto comp = forest_components(host, pair.primal);
    return {double(primal_cycles(host, pair.primal).size()), double(h.x), double(h.y), double(c.x), double(c.y),
            comp[v1] == comp[v2] ? 1.0 : 0.0};
}

ConnectivityStats summarize(const std::vector<PairValues>& vals, const std::vector<double>& weight) {
    ConnectivityStats s;
    for (size_t i = 0; i < vals.size(); ++i) {
        s.e_k += weight[i] * vals[i].k;
        s.e_hx += weight[i] * vals[i].hx;
        s.e_hy += weight[i] * vals[i].hy;
        s.e_cross_x += weight[i] * vals[i].cx;
        s.e_cross_y += weight[i] * vals[i].cy;
        s.p_connect += weight[i] * vals[i].connected;
    }
    return s;
}

}  // namespace

ConnectivityStats connectivity_stats(const PeriodicGraph& g, int n, Field b) {
    auto t = torus_setup(g, n);
    auto [v1, v2] = designated_pair(t.dg.host, n);
    ExactTorusSampler sampler(t, b);
    std::vector<PairValues> vals;
    for (const auto& p : sampler.pairs()) vals.push_back(values_of(t, p, v1, v2));
    auto s = summarize(vals, sampler.probabilities());
    s.b = b;
    s.n = n;
    s.v1 = v1;
    s.v2 = v2;
    return s;
}

ConnectivityStats connectivity_stats(const PeriodicGraph& g, int n, Field b, long long samples, std::uint64_t seed,
                                     bool parallel) {
    if (samples < 1) throw Error("connectivity_stats: need at least one sample");
    auto t = torus_setup(g, n);
    auto [v1, v2] = designated_pair(t.dg.host, n);
    ExactTorusSampler sampler(t, b);
    const auto& pairs = sampler.pairs();
    std::vector<PairValues> cache;
    for (const auto& p : pairs) cache.push_back(values_of(t, p, v1, v2));
    std::vector<double> hits(pairs.size(), 0);
    std::vector<int> drawn(samples);
#pragma omp parallel for schedule(static) if (parallel)
    for (long long i = 0; i < samples; ++i) {
        RandomStream rng(seed, std::uint64_t(i));
        drawn[i] = int(&sampler.sample(rng) - pairs.data());
    }
    for (int i : drawn) hits[i] += 1.0 / double(samples);
    auto s = summarize(cache, hits);
    s.b = b;
    s.n = n;
    s.n_samples = samples;
    s.seed = seed;
    s.v1 = v1;
    s.v2 = v2;
    return s;
}

std::string stats_csv_header() { return "B_x,B_y,N,E_k,E_hx,E_hy,P_connect,n_samples,seed\n"; }

std::string stats_csv_row(const ConnectivityStats& s) {
    std::ostringstream os;
    os.precision(17);
    os << s.b.bx << ',' << s.b.by << ',' << s.n << ',' << s.e_k << ',' << s.e_hx << ',' << s.e_hy << ','
       << s.p_connect << ',' << s.n_samples << ',' << s.seed << '\n';
    return os.str();
}

}  // namespace dimers
