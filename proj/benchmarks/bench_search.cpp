#include <bac/generate.hpp>
#include <bac/search.hpp>

#include <benchmark/benchmark.h>

using namespace bac;

static void BM_SolveSatellite(benchmark::State& state)
{
    SatelliteParams p;
    p.photos = 8;
    p.window = 4;
    const Instance inst = generate_satellite(p);
    SearchOptions o;
    o.consistency = static_cast<Consistency>(state.range(0));
    o.branching = Branching::enumerate;
    std::uint64_t nodes = 0;
    for (auto _ : state) {
        const auto r = solve(inst, o);
        nodes = r.nodes;
        benchmark::DoNotOptimize(r.best_cost);
    }
    state.counters["nodes"] = static_cast<double>(nodes);
    state.SetLabel(to_string(o.consistency));
}
BENCHMARK(BM_SolveSatellite)
    ->Arg(static_cast<int>(Consistency::nc))
    ->Arg(static_cast<int>(Consistency::ac))
    ->Arg(static_cast<int>(Consistency::bac))
    ->Arg(static_cast<int>(Consistency::bac0))
    ->Unit(benchmark::kMillisecond);

static void BM_SolveSpacerChain(benchmark::State& state)
{
    SpacerChainParams p;
    p.m = 6;
    p.L = state.range(0);
    const Instance inst = generate_spacer_chain(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(inst).best_cost);
}
BENCHMARK(BM_SolveSpacerChain)->Arg(1'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
