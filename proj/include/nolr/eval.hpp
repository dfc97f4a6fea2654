#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nolr/ingest.hpp"
#include "nolr/logreg.hpp"
#include "nolr/matrixize.hpp"
#include "nolr/window.hpp"

namespace nolr {

/// Serial is the reference path; Parallel spreads test points over OpenMP
/// threads and must produce identical results.
enum class ExecutionMode { Serial, Parallel };

enum class Model { Nolr, Persistence, Logreg };

const char* model_name(Model m);
Model parse_model(const std::string& name);

/// Per-hour predictions over a range; hours whose training window could not be
/// formed are left unscored.
struct RangePredictions {
  HourRange range;
  std::vector<std::uint8_t> label;
  std::vector<std::uint8_t> scored;

  std::size_t skipped() const;
  friend bool operator==(const RangePredictions&, const RangePredictions&) = default;
};

/// Seed for the model trained at one test hour. Independent of evaluation
/// order so serial and parallel runs agree.
std::uint64_t point_seed(std::uint64_t base_seed, std::size_t test_hour_index);

/// Trains a fresh model on the window chosen for `test_hour` and classifies the
/// neighbor vector at that hour. nullopt when the window underflows.
std::optional<std::uint8_t> nolr_predict_point(const OccupancyGrid& grid, std::size_t target_index,
                                               std::size_t test_hour, const WindowPolicy& policy,
                                               const TrainConfig& config);

RangePredictions nolr_predict(const OccupancyGrid& grid, const std::string& target, HourRange test_range,
                              const WindowPolicy& policy, const TrainConfig& config,
                              ExecutionMode mode = ExecutionMode::Serial);

/// Fraction of positions where the vectors agree.
double score(std::span<const std::uint8_t> predictions, std::span<const std::uint8_t> truth);

struct WeekScore {
  HourRange range;
  std::size_t correct = 0;
  std::size_t scored = 0;
  std::size_t skipped = 0;

  /// nullopt when no point of the week was scored.
  std::optional<double> accuracy() const;
  friend bool operator==(const WeekScore&, const WeekScore&) = default;
};

struct ModelReport {
  Model model = Model::Nolr;
  std::vector<WeekScore> weeks;
  /// Correct over scored across all weeks.
  double average = 0.0;
  std::size_t skipped = 0;
};

struct EvalReport {
  std::string target;
  std::vector<ModelReport> models;
  std::string fingerprint;

  const ModelReport* find(Model m) const;
};

struct BenchmarkConfig {
  std::string target;
  std::vector<HourRange> test_weeks;
  std::vector<Model> models{Model::Nolr, Model::Persistence, Model::Logreg};
  WindowPolicy policy;
  TrainConfig train;
  /// Fixed window for the traditional model; defaults to the four weeks
  /// before the first test week.
  std::optional<HourRange> logreg_train_range;
  ExecutionMode mode = ExecutionMode::Serial;
};

/// Week k (1-based) spans hours [(k-1)*168, k*168) of the grid.
std::vector<HourRange> week_ranges(std::size_t first_week, std::size_t last_week, std::size_t grid_hours);

EvalReport weekly_report(const OccupancyGrid& grid, const BenchmarkConfig& config);

/// JSON: {target, models: {name: {weeks, average, skipped}}, fingerprint}.
std::string report_json(const EvalReport& report);
/// `week_index,model,accuracy` rows for plotting.
void write_plot_csv(std::ostream& out, const EvalReport& report);

struct TuneConfig {
  HourRange validation_range;
  /// Candidate window lengths, one tuple per candidate, one entry per segment.
  std::vector<std::vector<std::size_t>> candidates;
  WindowPolicy base_policy;
  TrainConfig train;
  ExecutionMode mode = ExecutionMode::Serial;
};

struct TuneResult {
  std::vector<std::size_t> lengths;
  double accuracy = 0.0;
  std::size_t scored = 0;
  std::size_t candidates_evaluated = 0;
};

/// Every tuple of lengths 1..max_length stepping by `stride`, for each segment.
std::vector<std::vector<std::size_t>> length_grid(std::size_t segments, std::size_t max_length = 24,
                                                  std::size_t stride = 1);

/// Highest validation accuracy over the candidates; ties go to the
/// lexicographically smallest tuple.
TuneResult tune_lengths(const OccupancyGrid& grid, const std::string& target, const TuneConfig& config);

std::string tune_json(const TuneResult& result);

}  // namespace nolr
