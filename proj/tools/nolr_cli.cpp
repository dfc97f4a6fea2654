#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nolr/eval.hpp"
#include "nolr/ingest.hpp"
#include "nolr/synth.hpp"

using namespace nolr;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
  return parts;
}

template <class T>
T to_number(const std::string& s) {
  T v{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

template <class T>
std::vector<T> number_list(const std::string& s) {
  std::vector<T> out;
  for (const auto& p : split(s, ',')) out.push_back(to_number<T>(p));
  return out;
}

/// "5..10" or "5".
std::pair<std::size_t, std::size_t> week_span(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const auto w = to_number<std::size_t>(s);
    return {w, w};
  }
  return {to_number<std::size_t>(s.substr(0, dots)), to_number<std::size_t>(s.substr(dots + 2))};
}

struct PolicyFlags {
  std::string boundaries = "8,17";
  std::string offsets = "0,8,17";
  std::string lengths = "10,12,1";

  void add(CLI::App* app) {
    app->add_option("--boundaries", boundaries, "Hour-of-day segment boundaries")->capture_default_str();
    app->add_option("--offsets", offsets, "Per-segment base offsets")->capture_default_str();
    app->add_option("--lengths", lengths, "Per-segment window lengths in hours")->capture_default_str();
  }

  WindowPolicy policy() const {
    WindowPolicy p{number_list<int>(boundaries), number_list<int>(offsets), number_list<std::size_t>(lengths)};
    p.validate();
    return p;
  }
};

struct TrainFlags {
  std::uint64_t seed = 0;
  std::size_t max_iterations = 1000;
  double tolerance = 1e-6;
  std::string derivative = "paper";

  void add(CLI::App* app) {
    app->add_option("--seed", seed, "Weight initialization seed")->capture_default_str();
    app->add_option("--max-iterations", max_iterations)->capture_default_str();
    app->add_option("--tolerance", tolerance, "Stop when the error norm changes by less")->capture_default_str();
    app->add_option("--derivative", derivative)->check(CLI::IsMember({"paper", "textbook"}))->capture_default_str();
  }

  TrainConfig config() const {
    TrainConfig c{max_iterations, tolerance, seed,
                  derivative == "textbook" ? DerivativeMode::Textbook : DerivativeMode::Paper};
    c.validate();
    return c;
  }
};

struct GridFlags {
  std::string path;
  std::string origin = "2020-01-06T00:00:00Z";

  void add(CLI::App* app) {
    app->add_option("--grid", path, "Occupancy grid CSV")->required();
    app->add_option("--origin", origin, "Timestamp of hour_index 0")->capture_default_str();
  }

  OccupancyGrid load() const {
    auto in = open_in(path);
    return read_grid_csv(in, parse_rfc3339(origin));
  }
};

void print_stats(const OccupancyGrid& grid, std::size_t events) {
  const auto s = grid_stats(grid);
  std::fprintf(stderr, "events=%zu stations=%zu hours=%zu occupancy=%.4f event_free_hours=%.4f\n", events,
               grid.station_count(), grid.hours(), s.occupancy_rate, s.event_free_fraction);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neighbor-based logistic regression for charging-station occupancy"};
  app.require_subcommand(1);

  SynthConfig synth;
  std::string synth_out, synth_grid_out;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic charging log");
  synth_cmd->add_option("--seed", synth.rng_seed)->capture_default_str();
  synth_cmd->add_option("--stations", synth.n_stations)->capture_default_str();
  synth_cmd->add_option("--weeks", synth.weeks)->capture_default_str();
  synth_cmd->add_option("--coupling", synth.neighbor_coupling, "Share of demand driven by campus surges")
      ->capture_default_str();
  synth_cmd->add_option("--occupancy", synth.target_occupancy)->capture_default_str();
  synth_cmd->add_option("--session-minutes", synth.mean_session_minutes)->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Events CSV")->required();
  synth_cmd->add_option("--grid-out", synth_grid_out, "Also write the hourly grid CSV");

  std::string disc_events, disc_out, disc_origin, disc_stations;
  std::int64_t disc_hours = 0;
  auto* disc_cmd = app.add_subcommand("discretize", "Turn an events CSV into an hourly occupancy grid");
  disc_cmd->add_option("--events", disc_events)->required();
  disc_cmd->add_option("--origin", disc_origin, "Timestamp of hour_index 0, on an hour boundary")->required();
  disc_cmd->add_option("--hours", disc_hours, "Timeline length")->required();
  disc_cmd->add_option("--stations", disc_stations, "Comma-separated column order (default: first appearance)");
  disc_cmd->add_option("--out", disc_out, "Grid CSV")->required();

  GridFlags bench_grid;
  PolicyFlags bench_policy;
  TrainFlags bench_train;
  std::string bench_target, bench_weeks = "5..10", bench_models = "nolr,persistence,logreg", bench_out, bench_plot;
  std::string bench_logreg_weeks;
  bool bench_parallel = false;
  auto* bench_cmd = app.add_subcommand("benchmark", "Weekly accuracy of NOLR against the baselines");
  bench_grid.add(bench_cmd);
  bench_policy.add(bench_cmd);
  bench_train.add(bench_cmd);
  bench_cmd->add_option("--target", bench_target)->required();
  bench_cmd->add_option("--test-weeks", bench_weeks, "1-based inclusive, e.g. 5..10")->capture_default_str();
  bench_cmd->add_option("--models", bench_models)->capture_default_str();
  bench_cmd->add_option("--logreg-train-weeks", bench_logreg_weeks,
                        "Training weeks for the fixed-window model (default: four before the test weeks)");
  bench_cmd->add_flag("--parallel", bench_parallel, "Spread test points over threads");
  bench_cmd->add_option("--out", bench_out, "Report JSON")->required();
  bench_cmd->add_option("--plot", bench_plot, "Per-week accuracy CSV");

  GridFlags tune_grid;
  PolicyFlags tune_policy;
  TrainFlags tune_train;
  std::string tune_target, tune_range, tune_out;
  std::size_t tune_max = 24, tune_stride = 1;
  bool tune_parallel = false;
  auto* tune_cmd = app.add_subcommand("tune", "Search per-segment window lengths on a validation range");
  tune_grid.add(tune_cmd);
  tune_policy.add(tune_cmd);
  tune_train.add(tune_cmd);
  tune_cmd->add_option("--target", tune_target)->required();
  tune_cmd->add_option("--range", tune_range, "Validation weeks, e.g. 3..4")->required();
  tune_cmd->add_option("--max-length", tune_max)->capture_default_str();
  tune_cmd->add_option("--stride", tune_stride)->capture_default_str();
  tune_cmd->add_flag("--parallel", tune_parallel);
  tune_cmd->add_option("--out", tune_out, "Best lengths JSON")->required();

  GridFlags w_grid;
  PolicyFlags w_policy;
  TrainFlags w_train;
  std::string w_target, w_out;
  std::size_t w_hour = 0;
  auto* w_cmd = app.add_subcommand("weights", "Dump the weights trained for one test hour");
  w_grid.add(w_cmd);
  w_policy.add(w_cmd);
  w_train.add(w_cmd);
  w_cmd->add_option("--target", w_target)->required();
  w_cmd->add_option("--hour", w_hour, "Test hour index")->required();
  w_cmd->add_option("--out", w_out, "Weights CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) {
      const auto events = generate(synth);
      const auto grid = discretize(events, synth.origin, static_cast<std::int64_t>(synth.hours()), synth.station_ids());
      auto out = open_out(synth_out);
      write_events(out, events);
      if (!synth_grid_out.empty()) {
        auto g = open_out(synth_grid_out);
        write_grid_csv(g, grid);
      }
      print_stats(grid, events.size());
    } else if (*disc_cmd) {
      auto in = open_in(disc_events);
      const auto events = parse_events(in);
      const auto stations = disc_stations.empty() ? stations_in_order(events) : split(disc_stations, ',');
      const auto grid = discretize(events, parse_rfc3339(disc_origin), disc_hours, stations);
      auto out = open_out(disc_out);
      write_grid_csv(out, grid);
      print_stats(grid, events.size());
    } else if (*bench_cmd) {
      const auto grid = bench_grid.load();
      BenchmarkConfig cfg;
      cfg.target = bench_target;
      const auto [first, last] = week_span(bench_weeks);
      cfg.test_weeks = week_ranges(first, last, grid.hours());
      cfg.models.clear();
      for (const auto& m : split(bench_models, ',')) cfg.models.push_back(parse_model(m));
      cfg.policy = bench_policy.policy();
      cfg.train = bench_train.config();
      if (!bench_logreg_weeks.empty()) {
        const auto [lo, hi] = week_span(bench_logreg_weeks);
        const auto weeks = week_ranges(lo, hi, grid.hours());
        cfg.logreg_train_range = HourRange{weeks.front().lo, weeks.back().hi};
      }
      cfg.mode = bench_parallel ? ExecutionMode::Parallel : ExecutionMode::Serial;
      const auto report = weekly_report(grid, cfg);
      auto out = open_out(bench_out);
      out << report_json(report) << '\n';
      if (!bench_plot.empty()) {
        auto plot = open_out(bench_plot);
        write_plot_csv(plot, report);
      }
      for (const auto& m : report.models) {
        std::fprintf(stderr, "%-12s average=%.4f skipped=%zu\n", model_name(m.model), m.average, m.skipped);
      }
    } else if (*tune_cmd) {
      const auto grid = tune_grid.load();
      TuneConfig cfg;
      const auto [first, last] = week_span(tune_range);
      const auto weeks = week_ranges(first, last, grid.hours());
      cfg.validation_range = {weeks.front().lo, weeks.back().hi};
      cfg.base_policy = tune_policy.policy();
      cfg.candidates = length_grid(cfg.base_policy.segment_count(), tune_max, tune_stride);
      cfg.train = tune_train.config();
      cfg.mode = tune_parallel ? ExecutionMode::Parallel : ExecutionMode::Serial;
      const auto result = tune_lengths(grid, tune_target, cfg);
      auto out = open_out(tune_out);
      out << tune_json(result) << '\n';
      std::fprintf(stderr, "best accuracy=%.4f over %zu candidates\n", result.accuracy, result.candidates_evaluated);
    } else if (*w_cmd) {
      const auto grid = w_grid.load();
      const auto policy = w_policy.policy();
      auto config = w_train.config();
      const auto window = select_window(w_hour, grid.hour_of_day_at(w_hour), policy);
      if (!window) throw std::invalid_argument("training window for that hour starts before the grid");
      const auto ds = build_dataset(grid, w_target, {window->start_hour_index, window->end()});
      config.rng_seed = point_seed(config.rng_seed, w_hour);
      const auto model = train(ds.X, ds.y, config);
      if (w_out.empty()) {
        write_weights_csv(std::cout, ds.column_stations, model);
      } else {
        auto out = open_out(w_out);
        write_weights_csv(out, ds.column_stations, model);
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
