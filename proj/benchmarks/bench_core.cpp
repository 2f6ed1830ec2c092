#include <benchmark/benchmark.h>

#include "dmtherm/critical.hpp"
#include "dmtherm/discord.hpp"
#include "dmtherm/entanglement.hpp"
#include "dmtherm/sweep.hpp"
#include "dmtherm/thermal.hpp"

using namespace dmtherm;

namespace {

const Couplings kZ{1, 1.5, 2, 0, 0, 1.2};
const Couplings kY{-1, -1.5, -2, 0, 0.8, 0};
const Couplings kXY{1, 1, 2, 1, 2, 0};
const Couplings kGeneral{1, 1.5, 2, 0.3, 0.4, 0.5};

void BM_HermitianEig(benchmark::State& s) {
  const auto h = build_hamiltonian(kGeneral);
  for (auto _ : s) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig);

void BM_ThermalStateZ(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(thermal_state_z(kZ, 0.7));
}
BENCHMARK(BM_ThermalStateZ);

void BM_ThermalStateGeneric(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(thermal_state_generic(kGeneral, 0.7));
}
BENCHMARK(BM_ThermalStateGeneric);

void BM_ConcurrenceZ(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(concurrence_z(kZ, 0.7));
}
BENCHMARK(BM_ConcurrenceZ);

void BM_ConcurrenceXY(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(concurrence_xy(kXY, 3.0));
}
BENCHMARK(BM_ConcurrenceXY);

void BM_ConcurrenceWootters(benchmark::State& s) {
  const auto rho = thermal_state_generic(kGeneral, 0.7).rho;
  for (auto _ : s) benchmark::DoNotOptimize(concurrence_wootters(rho));
}
BENCHMARK(BM_ConcurrenceWootters);

void BM_DiscordY(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(discord_y(kY, 0.7));
}
BENCHMARK(BM_DiscordY);

void BM_DiscordGridOracle(benchmark::State& s) {
  const auto rho = thermal_state_generic(kGeneral, 0.7).rho;
  for (auto _ : s) benchmark::DoNotOptimize(discord_grid_oracle(rho));
}
BENCHMARK(BM_DiscordGridOracle)->Unit(benchmark::kMillisecond);

void BM_CriticalTemperatureZ(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(critical_temperature_z(kZ));
}
BENCHMARK(BM_CriticalTemperatureZ);

void BM_CriticalTemperatureOracle(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(critical_temperature_oracle(kXY));
}
BENCHMARK(BM_CriticalTemperatureOracle)->Unit(benchmark::kMicrosecond);

// A figure-sized 201 x 201 concurrence map.
void BM_SweepConcurrenceMap(benchmark::State& s) {
  SweepSpec spec;
  spec.base = {1, 1, 0.2, 0, 0, 0};
  spec.axis1 = {Parameter::T, 0.0, 5.0, 201, ""};
  spec.axis2 = Axis{Parameter::Dz, -3.0, 3.0, 201, ""};
  spec.quantity = Quantity::ConcurrenceZ;
  spec.threads = static_cast<unsigned>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(run_sweep(spec));
}
BENCHMARK(BM_SweepConcurrenceMap)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
