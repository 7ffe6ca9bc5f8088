#include <benchmark/benchmark.h>

#include <vector>

#include "chsplice/eval_harness.hpp"
#include "chsplice/ofdm_link.hpp"
#include "chsplice/splicer.hpp"

namespace {

using namespace chsplice;

// Sub-band width in MHz is the benchmark argument; the span is always 160 MHz.
BandPlan plan_for(const benchmark::State& state) {
  return build_band_plan(160e6, static_cast<double>(state.range(0)) * 1e6, 5e9, 312.5e3);
}

std::vector<double> all_freqs(const BandPlan& plan) {
  std::vector<double> freqs;
  for (std::size_t m = 0; m < plan.num_bands(); ++m) {
    const auto f = subcarrier_freqs(plan, m);
    freqs.insert(freqs.end(), f.begin(), f.end());
  }
  return freqs;
}

StackedMeasurement two_path_measurement(const BandPlan& plan) {
  const SparseChannel ch(std::vector<Path>{{0.0, {1.0, 0.0}}, {18.75e-9, {0.6, 0.3}}});
  std::vector<CfrMeasurement> meas;
  for (std::size_t m = 0; m < plan.num_bands(); ++m)
    meas.push_back(sound_band(ch, plan, m, PilotGrid::all_ones(m, plan.num_subcarriers()),
                              NoiseModel::noiseless()));
  return stack_measurements(meas, plan);
}

void BM_BuildDictionary(benchmark::State& state) {
  const auto plan = plan_for(state);
  const auto freqs = all_freqs(plan);
  for (auto _ : state) benchmark::DoNotOptimize(build_dictionary(freqs, plan.spacing_hz()));
  state.counters["rows"] = static_cast<double>(freqs.size());
}
BENCHMARK(BM_BuildDictionary)->Arg(80)->Arg(40)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_OmpTwoPaths(benchmark::State& state) {
  const auto plan = plan_for(state);
  const auto stacked = two_path_measurement(plan);
  const auto dict = build_dictionary(stacked.freqs_hz, plan.spacing_hz());
  for (auto _ : state) benchmark::DoNotOptimize(omp(stacked, dict, 2, 0.0));
}
BENCHMARK(BM_OmpTwoPaths)->Arg(80)->Arg(40)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_OmpSparsity(benchmark::State& state) {
  const auto plan = build_band_plan(160e6, 40e6, 5e9, 312.5e3);
  const auto stacked = two_path_measurement(plan);
  const auto dict = build_dictionary(stacked.freqs_hz, plan.spacing_hz());
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(omp(stacked, dict, k, 0.0));
}
BENCHMARK(BM_OmpSparsity)->RangeMultiplier(2)->Range(1, 16)->Unit(benchmark::kMillisecond);

void BM_RunScenario(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.sub_bw_hz = static_cast<double>(state.range(0)) * 1e6;
  cfg.paths = {{0.0, 0.0, GainMode::kRayleigh}, {18.75e-9, -2.0, GainMode::kRayleigh}};
  cfg.gain_mode = GainMode::kRayleigh;
  cfg.snr_db = 30.0;
  cfg.distortion = true;
  cfg.omp_tol = 0.0;
  cfg.packets = 20;
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.packets));
}
BENCHMARK(BM_RunScenario)->Arg(80)->Arg(40)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
