// Serial reference paths against the OpenMP kernels.

#include <sstream>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "abperc/harness.hpp"
#include "abperc/observables.hpp"
#include "abperc/pointprocess.hpp"
#include "abperc/rng.hpp"

using namespace abperc;

namespace {

std::pair<PointSet, PointSet> torus_sample(double n) {
    const auto w = Window::torus(2);
    return {sample_poisson(w, n, derive_seed(1, 0)), sample_poisson(w, 0.8 * n, derive_seed(1, 1))};
}

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::parallel : Execution::serial; }

void auxiliary(benchmark::State& state) {
    const double n = static_cast<double>(state.range(0));
    const auto [p1, p2] = torus_sample(n);
    const double r = cutoff_radius(n, 0.8, 1.0, 2);
    for (auto _ : state) benchmark::DoNotOptimize(auxiliary_counts(p1, p2, r, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p1.size()));
}

void isolation(benchmark::State& state) {
    const auto [p1, p2] = torus_sample(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(isolation_radii(p1, p2, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p1.size()));
}

void replications(benchmark::State& state) {
    ExperimentConfig cfg;
    cfg.n = static_cast<double>(state.range(0));
    cfg.c = 0.8;
    cfg.reps = 32;
    RunOptions opt;
    opt.parallel = state.range(1) ? omp_get_max_threads() : 1;
    for (auto _ : state) {
        std::ostringstream os;
        run_experiment(cfg, os, opt);
        benchmark::DoNotOptimize(os.str());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.reps));
}

}  // namespace

// Second argument: 0 = serial reference, 1 = OpenMP.
BENCHMARK(auxiliary)->ArgsProduct({{10'000, 100'000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(isolation)->ArgsProduct({{10'000, 100'000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(replications)->ArgsProduct({{10'000}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
