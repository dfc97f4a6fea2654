#include "nolr/eval.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "nolr/baselines.hpp"

#ifdef NOLR_HAS_OPENMP
#include <omp.h>
#endif

namespace nolr {
namespace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::json policy_json(const WindowPolicy& p) {
  return {{"boundaries", p.boundaries}, {"offsets", p.offsets}, {"lengths", p.lengths}};
}

nlohmann::json train_json(const TrainConfig& c) {
  return {{"max_iterations", c.max_iterations},
          {"error_tolerance", c.error_tolerance},
          {"rng_seed", c.rng_seed},
          {"derivative_mode", c.derivative_mode == DerivativeMode::Paper ? "paper" : "textbook"}};
}

std::uint64_t grid_hash(const OccupancyGrid& grid) {
  std::ostringstream os;
  os << grid.origin().time_since_epoch().count() << '|';
  write_grid_csv(os, grid);
  return fnv1a(os.str());
}

// Runs body(i) for i in [0, count), serially or across OpenMP threads. The
// first exception thrown by any iteration is rethrown on the caller's thread.
template <typename Body>
void for_each_index(std::size_t count, ExecutionMode mode, Body&& body) {
  if (mode == ExecutionMode::Serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  const auto n = static_cast<std::int64_t>(count);
#ifdef NOLR_HAS_OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#ifdef NOLR_HAS_OPENMP
#pragma omp critical(nolr_error)
#endif
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

WeekScore score_week(HourRange range, std::span<const std::uint8_t> truth, const RangePredictions& pred) {
  WeekScore ws;
  ws.range = range;
  for (std::size_t k = 0; k < pred.label.size(); ++k) {
    if (!pred.scored[k]) {
      ++ws.skipped;
      continue;
    }
    ++ws.scored;
    if (pred.label[k] == truth[range.lo + k]) ++ws.correct;
  }
  return ws;
}

}  // namespace

const char* model_name(Model m) {
  switch (m) {
    case Model::Nolr: return "nolr";
    case Model::Persistence: return "persistence";
    case Model::Logreg: return "logreg";
  }
  return "?";
}

Model parse_model(const std::string& name) {
  if (name == "nolr") return Model::Nolr;
  if (name == "persistence") return Model::Persistence;
  if (name == "logreg") return Model::Logreg;
  throw std::invalid_argument("unknown model '" + name + "'");
}

std::size_t RangePredictions::skipped() const {
  return static_cast<std::size_t>(std::count(scored.begin(), scored.end(), std::uint8_t{0}));
}

std::uint64_t point_seed(std::uint64_t base_seed, std::size_t test_hour_index) {
  std::uint64_t z = base_seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(test_hour_index) + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::optional<std::uint8_t> nolr_predict_point(const OccupancyGrid& grid, std::size_t target_index,
                                               std::size_t test_hour, const WindowPolicy& policy,
                                               const TrainConfig& config) {
  const auto window = select_window(test_hour, grid.hour_of_day_at(test_hour), policy);
  if (!window) return std::nullopt;
  if (window->end() > test_hour) throw std::logic_error("training window reaches the test hour");

  const Dataset train_set =
      build_dataset(grid, grid.stations()[target_index], {window->start_hour_index, window->end()});
  for (auto h : train_set.hour_index_of_row) {
    if (h >= test_hour) throw std::logic_error("training row at or after the test hour");
  }
  TrainConfig point_config = config;
  point_config.rng_seed = point_seed(config.rng_seed, test_hour);
  const WeightVector model = train(train_set.X, train_set.y, point_config);
  const auto x = neighbor_row(grid, target_index, test_hour);
  return classify(x, model);
}

RangePredictions nolr_predict(const OccupancyGrid& grid, const std::string& target, HourRange test_range,
                              const WindowPolicy& policy, const TrainConfig& config, ExecutionMode mode) {
  policy.validate();
  config.validate();
  const std::size_t target_index = grid.station_index(target);
  if (test_range.lo >= test_range.hi || test_range.hi > grid.hours()) {
    throw std::invalid_argument("test range outside grid");
  }
  RangePredictions out;
  out.range = test_range;
  out.label.assign(test_range.size(), 0);
  out.scored.assign(test_range.size(), 0);
  for_each_index(test_range.size(), mode, [&](std::size_t k) {
    const auto p = nolr_predict_point(grid, target_index, test_range.lo + k, policy, config);
    if (p) {
      out.label[k] = *p;
      out.scored[k] = 1;
    }
  });
  return out;
}

double score(std::span<const std::uint8_t> predictions, std::span<const std::uint8_t> truth) {
  if (predictions.size() != truth.size()) throw std::invalid_argument("score: length mismatch");
  if (predictions.empty()) throw std::invalid_argument("score: empty input");
  std::size_t same = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) same += predictions[i] == truth[i];
  return static_cast<double>(same) / static_cast<double>(predictions.size());
}

std::optional<double> WeekScore::accuracy() const {
  if (scored == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(scored);
}

const ModelReport* EvalReport::find(Model m) const {
  for (const auto& r : models) {
    if (r.model == m) return &r;
  }
  return nullptr;
}

std::vector<HourRange> week_ranges(std::size_t first_week, std::size_t last_week, std::size_t grid_hours) {
  if (first_week < 1 || last_week < first_week) throw std::invalid_argument("invalid week span");
  if (last_week * kHoursPerWeek > grid_hours) throw std::invalid_argument("week span exceeds grid");
  std::vector<HourRange> out;
  for (std::size_t w = first_week; w <= last_week; ++w) {
    out.push_back({(w - 1) * kHoursPerWeek, w * kHoursPerWeek});
  }
  return out;
}

EvalReport weekly_report(const OccupancyGrid& grid, const BenchmarkConfig& config) {
  config.policy.validate();
  config.train.validate();
  if (config.test_weeks.empty()) throw std::invalid_argument("no test weeks");
  for (std::size_t i = 0; i < config.test_weeks.size(); ++i) {
    const auto& w = config.test_weeks[i];
    if (w.lo >= w.hi || w.hi > grid.hours()) throw std::invalid_argument("test week outside grid");
    if (i > 0 && w.lo < config.test_weeks[i - 1].hi) {
      throw std::invalid_argument("test weeks must be disjoint and ordered");
    }
  }
  const std::size_t target_index = grid.station_index(config.target);
  const auto truth = grid.row(target_index);

  HourRange logreg_range;
  if (config.logreg_train_range) {
    logreg_range = *config.logreg_train_range;
  } else {
    const std::size_t first = config.test_weeks.front().lo;
    logreg_range = {first >= 4 * kHoursPerWeek ? first - 4 * kHoursPerWeek : 0, first};
  }

  EvalReport report;
  report.target = config.target;

  std::set<Model> seen;
  for (Model m : config.models) {
    if (!seen.insert(m).second) continue;
    ModelReport mr;
    mr.model = m;
    std::optional<WeightVector> logreg_model;
    if (m == Model::Logreg) {
      if (logreg_range.lo >= logreg_range.hi) {
        throw std::invalid_argument("no hours available to train the fixed-window model");
      }
      const Dataset train_set = build_dataset(grid, config.target, logreg_range);
      logreg_model = train(train_set.X, train_set.y, config.train);
    }
    for (const auto& week : config.test_weeks) {
      RangePredictions pred;
      switch (m) {
        case Model::Nolr:
          pred = nolr_predict(grid, config.target, week, config.policy, config.train, config.mode);
          break;
        case Model::Persistence: {
          pred.range = week;
          pred.label.assign(week.size(), 0);
          pred.scored.assign(week.size(), 0);
          const HourRange usable{std::max<std::size_t>(week.lo, 1), week.hi};
          if (usable.lo < usable.hi) {
            const auto p = persistence_predict(truth, usable);
            const std::size_t offset = usable.lo - week.lo;
            for (std::size_t k = 0; k < p.size(); ++k) {
              pred.label[offset + k] = p[k];
              pred.scored[offset + k] = 1;
            }
          }
          break;
        }
        case Model::Logreg: {
          const Dataset test_set = build_dataset(grid, config.target, week);
          pred.range = week;
          pred.label.resize(week.size());
          pred.scored.assign(week.size(), 1);
          for (std::size_t k = 0; k < week.size(); ++k) pred.label[k] = classify(test_set.X.row(k), *logreg_model);
          break;
        }
      }
      mr.weeks.push_back(score_week(week, truth, pred));
    }
    std::size_t correct = 0, scored = 0;
    for (const auto& ws : mr.weeks) {
      correct += ws.correct;
      scored += ws.scored;
      mr.skipped += ws.skipped;
    }
    mr.average = scored ? static_cast<double>(correct) / static_cast<double>(scored) : 0.0;
    report.models.push_back(std::move(mr));
  }

  nlohmann::json fp;
  fp["target"] = config.target;
  std::vector<std::vector<std::size_t>> weeks;
  for (const auto& w : config.test_weeks) weeks.push_back({w.lo, w.hi});
  fp["test_weeks"] = weeks;
  std::vector<std::string> names;
  for (Model m : config.models) names.emplace_back(model_name(m));
  fp["models"] = names;
  fp["policy"] = policy_json(config.policy);
  fp["train"] = train_json(config.train);
  fp["logreg_train_range"] = {logreg_range.lo, logreg_range.hi};
  fp["grid"] = hex64(grid_hash(grid));
  report.fingerprint = hex64(fnv1a(fp.dump()));
  return report;
}

std::string report_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["target"] = report.target;
  nlohmann::ordered_json models = nlohmann::ordered_json::object();
  for (const auto& mr : report.models) {
    nlohmann::ordered_json weeks = nlohmann::ordered_json::array();
    nlohmann::ordered_json scored = nlohmann::ordered_json::array();
    for (const auto& ws : mr.weeks) {
      if (auto a = ws.accuracy()) weeks.push_back(*a);
      else weeks.push_back(nullptr);
      scored.push_back(ws.scored);
    }
    models[model_name(mr.model)] = {
        {"weeks", weeks}, {"scored", scored}, {"average", mr.average}, {"skipped", mr.skipped}};
  }
  j["models"] = models;
  j["fingerprint"] = report.fingerprint;
  return j.dump(2) + "\n";
}

void write_plot_csv(std::ostream& out, const EvalReport& report) {
  out << "week_index,model,accuracy\n";
  auto old = out.precision(17);
  for (const auto& mr : report.models) {
    for (std::size_t i = 0; i < mr.weeks.size(); ++i) {
      out << (mr.weeks[i].range.lo / kHoursPerWeek + 1) << ',' << model_name(mr.model) << ',';
      if (auto a = mr.weeks[i].accuracy()) out << *a;
      out << '\n';
    }
  }
  out.precision(old);
}

std::vector<std::vector<std::size_t>> length_grid(std::size_t segments, std::size_t max_length,
                                                  std::size_t stride) {
  if (segments == 0 || max_length == 0 || stride == 0) throw std::invalid_argument("empty length grid");
  std::vector<std::size_t> values;
  for (std::size_t v = 1; v <= max_length; v += stride) values.push_back(v);
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t s = 0; s < segments; ++s) {
    std::vector<std::vector<std::size_t>> next;
    next.reserve(out.size() * values.size());
    for (const auto& prefix : out) {
      for (auto v : values) {
        auto t = prefix;
        t.push_back(v);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

TuneResult tune_lengths(const OccupancyGrid& grid, const std::string& target, const TuneConfig& config) {
  if (config.candidates.empty()) throw std::invalid_argument("empty candidate set");
  config.base_policy.validate();
  config.train.validate();
  const std::size_t segments = config.base_policy.segment_count();
  for (const auto& c : config.candidates) {
    if (c.size() != segments) throw std::invalid_argument("candidate arity differs from segment count");
    for (auto n : c) {
      if (n < 1) throw std::invalid_argument("candidate lengths must be at least 1");
    }
  }
  const auto& range = config.validation_range;
  if (range.lo >= range.hi || range.hi > grid.hours()) throw std::invalid_argument("validation range outside grid");
  const std::size_t target_index = grid.station_index(target);
  const auto truth = grid.row(target_index);

  // A point's window depends only on its own segment's length, so the
  // accuracy of a tuple is a sum of per-segment correct counts.
  std::vector<std::set<std::size_t>> lengths_per_segment(segments);
  for (const auto& c : config.candidates) {
    for (std::size_t s = 0; s < segments; ++s) lengths_per_segment[s].insert(c[s]);
  }
  struct Job {
    std::size_t hour;
    std::size_t segment;
    std::size_t length;
  };
  std::vector<Job> jobs;
  std::size_t scored = 0;
  for (std::size_t x = range.lo; x < range.hi; ++x) {
    const int h = grid.hour_of_day_at(x);
    if (!select_window(x, h, config.base_policy)) continue;
    ++scored;
    const auto seg = segment_of(h, config.base_policy);
    for (auto n : lengths_per_segment[seg]) jobs.push_back({x, seg, n});
  }
  if (scored == 0) throw std::invalid_argument("no validation point has a usable window");

  std::vector<std::uint8_t> hit(jobs.size(), 0);
  for_each_index(jobs.size(), config.mode, [&](std::size_t i) {
    WindowPolicy policy = config.base_policy;
    policy.lengths[jobs[i].segment] = jobs[i].length;
    const auto p = nolr_predict_point(grid, target_index, jobs[i].hour, policy, config.train);
    hit[i] = p && *p == truth[jobs[i].hour];
  });

  std::vector<std::map<std::size_t, std::size_t>> correct(segments);
  for (std::size_t i = 0; i < jobs.size(); ++i) correct[jobs[i].segment][jobs[i].length] += hit[i];

  TuneResult best;
  std::size_t best_correct = 0;
  bool have = false;
  for (const auto& c : config.candidates) {
    std::size_t total = 0;
    for (std::size_t s = 0; s < segments; ++s) {
      auto it = correct[s].find(c[s]);
      if (it != correct[s].end()) total += it->second;
    }
    if (!have || total > best_correct || (total == best_correct && c < best.lengths)) {
      best.lengths = c;
      best_correct = total;
      have = true;
    }
  }
  best.scored = scored;
  best.accuracy = static_cast<double>(best_correct) / static_cast<double>(scored);
  best.candidates_evaluated = config.candidates.size();
  return best;
}

std::string tune_json(const TuneResult& result) {
  nlohmann::ordered_json j;
  j["lengths"] = result.lengths;
  j["accuracy"] = result.accuracy;
  j["scored"] = result.scored;
  j["candidates_evaluated"] = result.candidates_evaluated;
  return j.dump(2) + "\n";
}

}  // namespace nolr
