#include <benchmark/benchmark.h>

#include "dimers/laplacian.hpp"
#include "dimers/phase.hpp"
#include "dimers/sampler.hpp"

using namespace dimers;

namespace {

const WiredGraph& wired(int n) {
    static std::map<int, WiredGraph> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_wired(drifted_grid(1, 2, 3, 4), n)).first;
    return it->second;
}

void BM_Wilson(benchmark::State& s) {
    const auto& w = wired(int(s.range(0)));
    bool parallel = s.range(1) != 0;
    for (auto _ : s) benchmark::DoNotOptimize(wilson_counts(w.graph, 20000, 1, parallel));
    s.SetItemsProcessed(s.iterations() * 20000);
}

void BM_Visits(benchmark::State& s) {
    const auto& w = wired(int(s.range(0)));
    bool parallel = s.range(1) != 0;
    for (auto _ : s) benchmark::DoNotOptimize(estimate_visits(w.graph, 2000, 1, parallel));
}

void BM_PhaseScan(benchmark::State& s) {
    auto p = phase_polynomial(drifted_grid(1, 2, 3, 4));
    ScanGrid g;
    g.nx = g.ny = int(s.range(0));
    g.samples = 64;
    bool parallel = s.range(1) != 0;
    for (auto _ : s) benchmark::DoNotOptimize(phase_scan(p, g, parallel));
}

void BM_TorusStats(benchmark::State& s) {
    auto g = drifted_grid(1, 2, 3, 4);
    bool parallel = s.range(0) != 0;
    for (auto _ : s) benchmark::DoNotOptimize(connectivity_stats(g, 2, {0.5, 0.5}, 20000, 1, parallel));
}

}  // namespace

// Second argument: 0 serial reference, 1 OpenMP.
BENCHMARK(BM_Wilson)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Visits)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseScan)->ArgsProduct({{16}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TorusStats)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
