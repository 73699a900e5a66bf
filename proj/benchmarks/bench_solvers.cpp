#include <benchmark/benchmark.h>

#include "dimerchain/collective.hpp"
#include "dimerchain/dense_solver.hpp"
#include "dimerchain/entanglement.hpp"
#include "dimerchain/factorization.hpp"
#include "dimerchain/jw_solver.hpp"
#include "dimerchain/sweep.hpp"

using namespace dimerchain;

namespace {

ChainSpec chain(int n, double b) {
    return build_dimer_chain(n, 0.5, 0.5, {1.0, 0.9, 0.0}, {0.25, 0.225, 0.0},
                             FieldProfile::uniform(b));
}

void bm_jw_sector_solve(benchmark::State& state) {
    ChainSpec spec = chain(static_cast<int>(state.range(0)), 0.45);
    for (auto _ : state) {
        SectorSolution sol = solve_sector(spec, +1);
        benchmark::DoNotOptimize(sol.energy);
    }
}
BENCHMARK(bm_jw_sector_solve)->Arg(20)->Arg(60);

void bm_jw_sweep_point(benchmark::State& state) {
    ChainSpec spec = chain(20, 0.0);
    for (auto _ : state) {
        SweepResult res =
            sweep(spec, FieldRay::uniform(), 0.45, 0.46, 2, {{1, 2}, {2, 3}, {1, 4}});
        benchmark::DoNotOptimize(res.rows.front().energy);
    }
}
BENCHMARK(bm_jw_sweep_point);

void bm_correlator_determinants(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    ContractionTable t = sector_ground_state(chain(n, 0.45), +1);
    for (auto _ : state) {
        SpinCorrelators c = spin_correlators(t, 1, n / 2);
        benchmark::DoNotOptimize(c.xx);
    }
}
BENCHMARK(bm_correlator_determinants)->Arg(20)->Arg(60);

void bm_dense_hamiltonian_build(benchmark::State& state) {
    ChainSpec spec = chain(static_cast<int>(state.range(0)), 0.3);
    for (auto _ : state) {
        DenseOperator H = dense_hamiltonian(spec);
        benchmark::DoNotOptimize(H.matrix.nonZeros());
    }
}
BENCHMARK(bm_dense_hamiltonian_build)->Arg(8)->Arg(12);

void bm_dense_sector_diagonalization(benchmark::State& state) {
    ChainSpec spec = chain(static_cast<int>(state.range(0)), 0.3);
    for (auto _ : state) {
        SectorEigen eig = sector_ground_states_dense(spec);
        benchmark::DoNotOptimize(eig.energy_plus);
    }
}
BENCHMARK(bm_dense_sector_diagonalization)->Arg(6)->Arg(8)->Arg(10);

void bm_collective_solve(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        CollectivePair cp =
            collective_ground_states(n, 0.5, 0.5, {1.0, 0.9, 0.0}, 0.4, 0.4);
        benchmark::DoNotOptimize(cp.plus.energy);
    }
}
BENCHMARK(bm_collective_solve)->Arg(20)->Arg(60);

void bm_uniform_factorization(benchmark::State& state) {
    ChainSpec spec = chain(20, 0.0);
    for (auto _ : state) {
        FactorizedState fs = uniform_solution(spec);
        benchmark::DoNotOptimize(fs.energy);
    }
}
BENCHMARK(bm_uniform_factorization);

} // namespace

BENCHMARK_MAIN();
