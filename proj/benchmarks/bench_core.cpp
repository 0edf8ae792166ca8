#include <benchmark/benchmark.h>

#include "bec/condensate.hpp"
#include "bec/specfun.hpp"
#include "bec/thermo.hpp"

namespace {

void BM_Polylog(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(bec::specfun::polylog(1.5, z));
}
BENCHMARK(BM_Polylog)->Arg(50)->Arg(95)->Arg(100);

void BM_BesselI(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bec::specfun::bessel_i_scaled(0.5, x));
}
BENCHMARK(BM_BesselI)->Arg(1)->Arg(20)->Arg(60);

void BM_PairOccupation(benchmark::State& state) {
  const bec::thermo::ThermalPoint point{1.0, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(bec::thermo::pair_occupation_over_energy(3, 1.0, point));
}
BENCHMARK(BM_PairOccupation);

void BM_SolveChemicalPotential(benchmark::State& state) {
  const bool relativistic = state.range(0) != 0;
  const bec::condensate::ChargeSpec charge{relativistic ? 1e4 : 1.0,
                                           relativistic ? bec::condensate::Regime::Relativistic
                                                        : bec::condensate::Regime::NonRelativistic};
  const double t = relativistic ? 200.0 : 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(bec::condensate::solve_chemical_potential(t, charge, 1.0));
}
BENCHMARK(BM_SolveChemicalPotential)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
