// Benchmarks for the vertex-enumeration kernels: the serial reference
// implementation (threads=1) against the OpenMP work-sharing path
// (threads=0 = one worker per core). On a single-core host the two should
// be at parity; on multicore hosts the parallel rows show the speedup.

#include <benchmark/benchmark.h>

#include "gbell/geometry.hpp"
#include "gbell/inequalities.hpp"
#include "gbell/scenario.hpp"

using namespace gbell;

namespace {

EnumerateOptions opts_for(int threads) {
    EnumerateOptions o;
    o.threads = threads;
    return o;
}

void BM_CycleVertices(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const HPolytope h = nd_hrep(n_cycle(n));
    const EnumerateOptions opts = opts_for(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        VPolytope v = enumerate_vertices(h, opts);
        benchmark::DoNotOptimize(v.vertices.data());
        if (v.count() != (1 << n) + (1 << (n - 1))) state.SkipWithError("wrong vertex count");
    }
}

void BM_ComposedVertices(benchmark::State& state) {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(3));
    const HPolytope h = nsnd_hrep(bs);
    const EnumerateOptions opts = opts_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        VPolytope v = enumerate_vertices(h, opts);
        benchmark::DoNotOptimize(v.vertices.data());
        if (v.count() != 1128) state.SkipWithError("wrong vertex count");
    }
}

void BM_LpMaximum(benchmark::State& state) {
    const BellScenario bs = BellScenario::make(alice_side(2), n_cycle(5));
    const HPolytope h = nsnd_hrep(bs);
    const auto obj = add(chsh_usual(bs, 0, 2), lift_bob(bs, kcbs(bs.bob_ptr()))).compile();
    for (auto _ : state) {
        LpResult r = maximize_linear(h, obj);
        benchmark::DoNotOptimize(r.value);
    }
}

} // namespace

BENCHMARK(BM_CycleVertices)
    ->ArgNames({"n", "threads"})
    ->Args({5, 1})
    ->Args({5, 0})
    ->Args({6, 1})
    ->Args({6, 0})
    ->Unit(benchmark::kMillisecond);

BENCHMARK(BM_ComposedVertices)
    ->ArgNames({"threads"})
    ->Args({1})
    ->Args({0})
    ->Unit(benchmark::kMillisecond)
    ->Iterations(1);

BENCHMARK(BM_LpMaximum)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
