#include <benchmark/benchmark.h>

#include <numbers>

#include "fibwalk/fibwalk.hpp"

using namespace fibwalk;

namespace {

constexpr double kPi = std::numbers::pi;

void BM_StepperStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const WalkConfig config = make_walk_config(n, CoinAngles{0.7, 1.9});
  Stepper stepper(config);
  WalkerState psi = WalkerState::localized(n, n / 2, 1.0, 0.0);
  for (auto _ : state) {
    stepper.step(psi);
    benchmark::DoNotOptimize(psi);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_StepperStep)->Arg(233)->Arg(987)->Arg(4181);

void BM_McdAverage(benchmark::State& state) {
  const WalkConfig config = make_walk_config(987, CoinAngles{kPi / 2, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(mcd_time_average(config, 400).value);
}
BENCHMARK(BM_McdAverage)->Unit(benchmark::kMillisecond);

void BM_Quasienergies(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const WalkConfig config = make_walk_config(n, CoinAngles{kPi / 2, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(quasienergies(config).energies.data());
}
BENCHMARK(BM_Quasienergies)->Arg(89)->Arg(233)->Unit(benchmark::kMillisecond);

void BM_Winding(benchmark::State& state) {
  const auto word = apply_termination(standard_word(233), parse_termination("ABA"));
  SchurParams params = make_schur_params(word, CoinAngles{1.1, -0.6});
  params.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(winding_number(params).winding);
}
BENCHMARK(BM_Winding)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_WindingAverageSweep(benchmark::State& state) {
  const GridSpec grid{{-kPi, kPi}, {-kPi, kPi}, 11};
  SchurSweepOptions options;
  options.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_winding_average(grid, default_ensemble(), options).cells.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.cell_count()));
}
BENCHMARK(BM_WindingAverageSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
