#include <bac/cost_function.hpp>

#include <benchmark/benchmark.h>

#include <array>

using namespace bac;

namespace {

template <class Kind>
void run_minimizer(benchmark::State& state, Kind kind)
{
    const Value d = state.range(0);
    const CostFunction f({0, 1}, kind, {{0, d}, {0, d}});
    const Valuation v(1000);
    FunctionOverlay ov;
    const std::array<Interval, 2> box{Interval{d / 4, d / 2}, Interval{d / 3, d}};
    for (auto _ : state)
        benchmark::DoNotOptimize(min_over_box(f, ov, box, v));
    state.counters["evals/call"] =
        benchmark::Counter(static_cast<double>(ov.evals), benchmark::Counter::kAvgIterations);
}

} // namespace

static void BM_MinSpacer(benchmark::State& s) { run_minimizer(s, Spacer{5, 10, 20, 40, 1}); }
static void BM_MinLinPlus(benchmark::State& s) { run_minimizer(s, LinPlus{2, 3, -50}); }
static void BM_MinMonoLeq(benchmark::State& s) { run_minimizer(s, MonoLeq{3, 9}); }
static void BM_MinFunctional(benchmark::State& s) { run_minimizer(s, FunctionalEq{9, {1, 7}}); }
static void BM_MinAntiFunctional(benchmark::State& s) { run_minimizer(s, AntiFunctionalNeq{9, {1, 0}}); }

BENCHMARK(BM_MinSpacer)->Arg(100)->Arg(1'000'000);
BENCHMARK(BM_MinLinPlus)->Arg(100)->Arg(1'000'000);
BENCHMARK(BM_MinMonoLeq)->Arg(100)->Arg(1'000'000);
BENCHMARK(BM_MinFunctional)->Arg(100)->Arg(10'000);
BENCHMARK(BM_MinAntiFunctional)->Arg(100)->Arg(10'000);
