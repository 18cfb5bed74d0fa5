#include <bac/generate.hpp>
#include <bac/propagation.hpp>

#include <benchmark/benchmark.h>

using namespace bac;

static void BM_SpacerChainBacZero(benchmark::State& state)
{
    SpacerChainParams p;
    p.m = 10;
    p.L = state.range(0);
    const Instance inst = generate_spacer_chain(p);
    for (auto _ : state) {
        PropState st(inst);
        benchmark::DoNotOptimize(st.enforce_bac_zero().w_zero_final);
    }
    state.counters["domain"] = static_cast<double>(p.L);
}
BENCHMARK(BM_SpacerChainBacZero)->Arg(1'000)->Arg(1'000'000)->Arg(1'000'000'000);

static void BM_SatelliteByConsistency(benchmark::State& state)
{
    SatelliteParams p;
    p.photos = 12;
    p.window = 6;
    const Instance inst = generate_satellite(p);
    const auto c = static_cast<Consistency>(state.range(0));
    PropOptions o;
    if (c == Consistency::nc || c == Consistency::ac)
        o.mode = PropMode::arc_star;
    for (auto _ : state) {
        PropState st(inst, o);
        benchmark::DoNotOptimize(st.enforce(c).w_zero_final);
    }
    state.SetLabel(to_string(c));
}
BENCHMARK(BM_SatelliteByConsistency)
    ->Arg(static_cast<int>(Consistency::nc))
    ->Arg(static_cast<int>(Consistency::ac))
    ->Arg(static_cast<int>(Consistency::bac))
    ->Arg(static_cast<int>(Consistency::bac0));

static void BM_RandomTablesBac(benchmark::State& state)
{
    RandomParams p;
    p.n = 30;
    p.d = static_cast<std::uint64_t>(state.range(0));
    p.e = 60;
    p.mixed = true;
    const Instance inst = generate_random(p);
    for (auto _ : state) {
        PropState st(inst);
        benchmark::DoNotOptimize(st.enforce_bac().deletions);
    }
}
BENCHMARK(BM_RandomTablesBac)->Arg(5)->Arg(10)->Arg(20);
