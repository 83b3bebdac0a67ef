#include <benchmark/benchmark.h>

#include "systolica/generators.hpp"
#include "systolica/systole.hpp"

namespace {

void BM_HomologicalSystole(benchmark::State& state) {
    auto s = systolica::grid_torus(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = systolica::homological_systole(s);
        benchmark::DoNotOptimize(r.length);
    }
    state.SetLabel("k=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_HomologicalSystole)->Arg(5)->Arg(10)->Arg(20);

void BM_HomotopySystole(benchmark::State& state) {
    auto s = systolica::genus_polygon(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        auto r = systolica::homotopy_systole(s);
        benchmark::DoNotOptimize(r.length);
    }
    state.SetLabel("genus=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_HomotopySystole)->Arg(2)->Arg(3);

void BM_HomologyBasis(benchmark::State& state) {
    auto s = systolica::grid_torus(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto b = systolica::Z2HomologyBasis::compute(s);
        benchmark::DoNotOptimize(b.rank());
    }
}
BENCHMARK(BM_HomologyBasis)->Arg(10)->Arg(20)->Arg(32);

} // namespace
