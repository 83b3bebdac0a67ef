#include <benchmark/benchmark.h>

#include "systolica/generators.hpp"
#include "systolica/surgery.hpp"

namespace {

void BM_Fill(benchmark::State& state) {
    auto s = systolica::grid_torus(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto r = systolica::fill(s);
        benchmark::DoNotOptimize(r.report.tet_count);
    }
    state.SetLabel("k=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_Fill)->Arg(5)->Arg(10)->Arg(16);

void BM_FillGenus(benchmark::State& state) {
    auto s = systolica::genus_polygon(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        auto r = systolica::fill(s);
        benchmark::DoNotOptimize(r.report.tet_count);
    }
    state.SetLabel("genus=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_FillGenus)->Arg(2)->Arg(4);

void BM_Subdivide(benchmark::State& state) {
    auto s = systolica::csaszar_torus();
    for (auto _ : state) {
        auto r = systolica::subdivide(s, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(r.face_count());
    }
}
BENCHMARK(BM_Subdivide)->Arg(1)->Arg(3);

} // namespace
