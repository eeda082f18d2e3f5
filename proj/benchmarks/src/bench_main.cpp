#include <benchmark/benchmark.h>

#include <sstream>

#include "fourflow/dynamics.hpp"
#include "fourflow/em_field.hpp"
#include "fourflow/geometry.hpp"
#include "fourflow/hamiltonian.hpp"
#include "fourflow/quantum.hpp"

namespace {

using namespace fourflow;

void BM_CanonicalStepHarmonic(benchmark::State& state) {
  const auto model = make_free_nonrel(1.0, Potential::harmonic(1.0));
  const ModifiedHamiltonian mh(*model, 1.0);
  PhasePoint p = on_shell_init(0.0, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, *model, 1.0);
  for (auto _ : state) {
    p = step_canonical_4d(p, 1e-3, mh);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_CanonicalStepHarmonic);

void BM_CanonicalStepRelativistic(benchmark::State& state) {
  const auto model = make_relativistic(1.0, 1.0, Potential::harmonic(0.5));
  const ModifiedHamiltonian mh(*model, 1.0);
  PhasePoint p = on_shell_init(0.0, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, *model, 1.0);
  for (auto _ : state) {
    p = step_canonical_4d(p, 1e-3, mh);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_CanonicalStepRelativistic);

void BM_GaugeStepUniformB(benchmark::State& state) {
  const auto model = make_relativistic(1.0, 1.0);
  const ModifiedHamiltonian mh(*model, 1.0);
  const FieldConfig field = FieldConfig::uniform_B({0.0, 0.0, 2.0});
  PhasePoint p = on_shell_init(0.0, {}, {1.0, 0.0, 0.0}, *model, 1.0);
  for (auto _ : state) {
    p = step_gauge_4d(p, 1e-3, mh, field, 1.0);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_GaugeStepUniformB);

void BM_OpticsStepGradientIndex(benchmark::State& state) {
  const auto model = make_optics_ray(1.0, IndexField::linear_gradient(1.5, {0.02, 0.0, 0.0}));
  const ModifiedHamiltonian mh(*model, 1.0);
  PhasePoint p = on_shell_init(0.0, {}, {1.2, 0.9, 0.0}, *model, 1.0);
  for (auto _ : state) {
    p = step_canonical_4d(p, 1e-3, mh);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_OpticsStepGradientIndex);

void BM_CrankNicolsonStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Potential1D V = Potential1D::harmonic(1.0);
  GridWavefunction psi = gaussian_packet(n, -40.0, 40.0, 1.0, 0.5, 2.0);
  for (auto _ : state) {
    psi = evolve_cn(psi, V, 1e-3, 1.0);
    benchmark::DoNotOptimize(psi.values.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_CrankNicolsonStep)->Arg(512)->Arg(2048)->Arg(8192);

void BM_TrajectoryCsv(benchmark::State& state) {
  const auto model = make_free_nonrel(1.0, Potential::harmonic(1.0));
  const ModifiedHamiltonian mh(*model, 1.0);
  const PhasePoint start = on_shell_init(0.0, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, *model, 1.0);
  const Trajectory traj = integrate(start, 1e-3, 1000, mh, FlowMode::canonical4d);
  for (auto _ : state) {
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    benchmark::DoNotOptimize(os);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(traj.samples.size()));
}
BENCHMARK(BM_TrajectoryCsv);

}  // namespace

BENCHMARK_MAIN();
