// bench_core.cpp — Microbenchmarks for the hot paths: generator assembly,
// steady-state solves in both frames, the RK4 oracle step, and the classical
// closed form.

#include <benchmark/benchmark.h>

#include "tcsim/sweeps.hpp"

using namespace tcsim;

namespace {

SystemParams bench_params(int n, double rel_drive) {
    return baseline_params(n, rel_drive * 0.03);
}

void BM_LiouvillianAssembly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int n_max = static_cast<int>(state.range(1));
    const SystemParams p = bench_params(n, 0.25);
    const HilbertSpace space(n, n_max);
    for (auto _ : state) {
        benchmark::DoNotOptimize(liouvillian(p, space).matrix.nonZeros());
    }
    state.SetLabel("dim^2 = " + std::to_string(static_cast<long>(space.dim()) * space.dim()));
}

void BM_SteadyStateSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int n_max = static_cast<int>(state.range(1));
    const SystemParams p = bench_params(n, 0.25);
    const HilbertSpace space(n, n_max);
    const Liouvillian l = liouvillian(p, space);
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_state(l).entries(0, 0));
    }
    state.SetLabel("dim = " + std::to_string(space.dim()));
}

void BM_DriveSweepRowDisplaced(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SweepSpec spec;
    spec.mode = SweepMode::drive;
    spec.params = bench_params(n, 0.0);
    spec.grid = GridSpec{2.0 * 0.03, 3.0 * 0.03, 2, GridSpacing::log};
    spec.n_list = {n};
    spec.include_classical = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep(spec, 1).rows.back().obs.cavity_pop);
    }
}

void BM_Rk4EvolutionStep(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const SystemParams p = bench_params(1, 0.25);
    const HilbertSpace space(1, n_max);
    const Liouvillian l = liouvillian(p, space);
    DenseMatrix rho0 = DenseMatrix::Zero(space.dim(), space.dim());
    rho0(0, 0) = 1.0;
    const double dt = 0.5 / inf_norm(l.matrix);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evolve_oracle(l, DensityMatrix{rho0}, 16.0 * dt, dt).entries(0, 0));
    }
}

void BM_ClassicalAmplitudes(benchmark::State& state) {
    const SystemParams p = bench_params(3, 0.25);
    double omega_d = 0.99;
    for (auto _ : state) {
        benchmark::DoNotOptimize(co_amplitudes(p, omega_d).c0);
        omega_d = omega_d < 1.01 ? omega_d + 1e-6 : 0.99;
    }
}

BENCHMARK(BM_LiouvillianAssembly)->Args({1, 8})->Args({2, 8})->Args({3, 8})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SteadyStateSolve)->Args({1, 8})->Args({1, 24})->Args({2, 12})->Args({3, 8})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DriveSweepRowDisplaced)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rk4EvolutionStep)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicalAmplitudes)->Unit(benchmark::kNanosecond);

}  // namespace

BENCHMARK_MAIN();
