#include <benchmark/benchmark.h>

#include "digitdim/digitdim.hpp"

using namespace digitdim;

static void BM_UnitCircle(benchmark::State& state)
{
    const Precision prec{state.range(0)};
    const Rational t(12345, 67891);
    for (auto _ : state)
        benchmark::DoNotOptimize(unit_circle(t, prec));
}
BENCHMARK(BM_UnitCircle)->Arg(64)->Arg(128)->Arg(256)->Arg(1024);

static void BM_Symbol(benchmark::State& state)
{
    const DigitSystem sys = DigitSystem::one_missing(static_cast<int>(state.range(0)), 1);
    const Rational x(12345, 67891);
    SymbolOptions opts;
    opts.force_path = state.range(1) != 0 ? SymbolPath::closed_form : SymbolPath::direct;
    for (auto _ : state)
        benchmark::DoNotOptimize(symbol_modulus(sys, x, kDefaultPrecision, opts));
}
BENCHMARK(BM_Symbol)->ArgsProduct({{5, 50}, {0, 1}});

// One F_L evaluation; b^L cocycle terms.
static void BM_GridSum(benchmark::State& state)
{
    const int base = static_cast<int>(state.range(0));
    const int level = static_cast<int>(state.range(1));
    const DigitSystem sys = DigitSystem::one_missing(base, 1);
    const Rational x(1, 3001);
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_sum(sys, level, x, kDefaultPrecision));
    state.SetItemsProcessed(state.iterations() * checked_power(base, level));
}
BENCHMARK(BM_GridSum)->Args({3, 1})->Args({5, 2})->Args({5, 4})->Args({50, 1});

static void BM_GridExtrema(benchmark::State& state)
{
    const DigitSystem sys = DigitSystem::one_missing(4, 0);
    const GridSpec grid = GridSpec::make(4, 2, parse_rational("1e-4"));
    EvalOptions opts;
    opts.workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_extrema(sys, grid, opts));
    state.SetItemsProcessed(state.iterations() * grid.count);
}
BENCHMARK(BM_GridExtrema)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
