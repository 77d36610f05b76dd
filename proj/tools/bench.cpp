#include <benchmark/benchmark.h>

#include "formlab/beltrami.hpp"
#include "formlab/finitetype.hpp"
#include "formlab/surface.hpp"

namespace {

using namespace formlab;

void identity_sweep(benchmark::State& state, ExecMode mode) {
    const SurfacePatch s = make_torus(2.0);
    const Grid grid{15, 15};
    for (auto _ : state) {
        IdentityReport rep = identity_suite(s, grid, 1e-7, mode);
        benchmark::DoNotOptimize(rep);
    }
}

void iterate_sweep(benchmark::State& state, ExecMode mode) {
    const SurfacePatch s = make_parallel(make_catenoid(1.0), 0.25);
    for (auto _ : state) {
        IterateTable t = sample_iterates(s, 4, Grid{5, 5}, mode);
        benchmark::DoNotOptimize(t);
    }
}

void bench_identity_serial(benchmark::State& s) { identity_sweep(s, ExecMode::serial); }
void bench_identity_parallel(benchmark::State& s) { identity_sweep(s, ExecMode::parallel); }
void bench_iterates_serial(benchmark::State& s) { iterate_sweep(s, ExecMode::serial); }
void bench_iterates_parallel(benchmark::State& s) { iterate_sweep(s, ExecMode::parallel); }

} // namespace

BENCHMARK(bench_identity_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_identity_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_iterates_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_iterates_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
