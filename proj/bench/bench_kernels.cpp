// Parallel kernels against their serial counterparts.
//
//   ./bench_kernels --benchmark_filter=Traces
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include "qcwitness/classicality_oracle.hpp"
#include "qcwitness/kernels.hpp"
#include "qcwitness/state_factory.hpp"
#include "qcwitness/sweep.hpp"
#include "qcwitness/witness.hpp"

using namespace qcw;

namespace {

DensityMatrix fixture_state(int n) {
    Rng rng(1234);
    return random_bipartite_density(n, rng);
}

void BM_TracesReference(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const GeneratorBasis basis = build_generators(n);
    const CMatrix rho = fixture_state(n).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::generator_traces(rho, basis));
    }
}

void BM_TracesSerial(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const GeneratorBasis basis = build_generators(n);
    const CMatrix rho = fixture_state(n).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::generator_traces(rho, basis, Exec::serial));
    }
}

void BM_TracesParallel(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const GeneratorBasis basis = build_generators(n);
    const CMatrix rho = fixture_state(n).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::generator_traces(rho, basis, Exec::parallel));
    }
}

void BM_Classify(benchmark::State &state, Exec exec) {
    const int n = static_cast<int>(state.range(0));
    const GeneratorBasis basis = build_generators(n);
    const DensityMatrix rho = fixture_state(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(rho, basis, {64, 1e-9, 1, exec}));
    }
}

void BM_Oracle(benchmark::State &state, Exec exec) {
    const int n = static_cast<int>(state.range(0));
    const DensityMatrix rho = fixture_state(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_classical(rho, {1e-10, 20, 7, 2000, exec}));
    }
}

void BM_Sweep(benchmark::State &state, Exec exec) {
    SweepConfig cfg;
    cfg.families = {{Family::x_form, 2, 20}, {Family::ginibre, 2, 20}, {Family::classical_rotated, 2, 20}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep(cfg, exec));
    }
}

} // namespace

BENCHMARK(BM_TracesReference)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TracesSerial)->DenseRange(2, 8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TracesParallel)->DenseRange(2, 8)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Classify, serial, Exec::serial)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Classify, parallel, Exec::parallel)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Oracle, serial, Exec::serial)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Oracle, parallel, Exec::parallel)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
