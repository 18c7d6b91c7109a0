// Parallel energy kernel against the serial reference on an ansatz field.
#include <benchmark/benchmark.h>

#include "wrinkle/ansatz.hpp"
#include "wrinkle/energy.hpp"

namespace {

using namespace wrinkle;

const Deformation& field(double h) {
  static const Deformation d = [h] {
    const SheetParams p{1e-4, 0.5, 1.0, h};
    const GridPtr g = make_grid(p, default_node_count(p), Refinement::uniform);
    const FhSolution sol = fh_minimize(p, g);
    const AnsatzField an = build_ansatz(sol, p, choose_parameters(h));
    return Deformation{an.u_r, an.u_theta, an.w};
  }();
  return d;
}

void run(benchmark::State& state, Backend backend) {
  const SheetParams p{1e-4, 0.5, 1.0, 2.5e-3};
  const Deformation& d = field(p.h);
  for (auto _ : state) {
    const EnergyBreakdown b = full_energy(d, p, {.M = 0, .backend = backend});
    benchmark::DoNotOptimize(b.total);
  }
  state.counters["nodes"] = static_cast<double>(d.grid().size());
  state.counters["M"] = static_cast<double>(required_samples(d.k_max()));
}

void BM_EnergyParallel(benchmark::State& state) { run(state, Backend::parallel); }
void BM_EnergySerial(benchmark::State& state) { run(state, Backend::serial_reference); }

BENCHMARK(BM_EnergyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergySerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
