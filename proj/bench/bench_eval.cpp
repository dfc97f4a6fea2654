#include <benchmark/benchmark.h>

#include "nolr/eval.hpp"
#include "nolr/synth.hpp"

using namespace nolr;

namespace {

const OccupancyGrid& grid() {
  static const OccupancyGrid g = [] {
    SynthConfig c;
    c.rng_seed = 1;
    return generate_grid(c);
  }();
  return g;
}

ExecutionMode mode_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecutionMode::Serial : ExecutionMode::Parallel;
}

void BM_NolrPredictWeek(benchmark::State& state) {
  const auto& g = grid();
  const HourRange week{4 * 168, 5 * 168};
  for (auto _ : state) {
    auto p = nolr_predict(g, "S01", week, WindowPolicy{}, TrainConfig{}, mode_of(state));
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(week.size()));
}
BENCHMARK(BM_NolrPredictWeek)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_TuneLengths(benchmark::State& state) {
  const auto& g = grid();
  TuneConfig cfg;
  cfg.validation_range = {2 * 168, 3 * 168};
  cfg.candidates = length_grid(3);
  cfg.mode = mode_of(state);
  for (auto _ : state) {
    auto r = tune_lengths(g, "S01", cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_TuneLengths)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_WeeklyReport(benchmark::State& state) {
  const auto& g = grid();
  BenchmarkConfig cfg;
  cfg.target = "S01";
  cfg.test_weeks = week_ranges(5, 10, g.hours());
  cfg.mode = mode_of(state);
  for (auto _ : state) {
    auto r = weekly_report(g, cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_WeeklyReport)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
