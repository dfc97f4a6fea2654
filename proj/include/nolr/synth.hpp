#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nolr/ingest.hpp"

namespace nolr {

/// Synthetic campus charging log.
///
/// Each station alternates between idle and charging. While idle, sessions
/// arrive as a Poisson process whose hourly rate is
///
///   base * profile(hour of day) * (1 - coupling + coupling * demand(hour))
///
/// where profile is `workhour_arrival_multiplier` over [08:00, 17:00) and 1
/// otherwise, and demand is a campus-wide factor shared by every station:
/// 1 / surge_probability in a surge hour, 0 otherwise (mean 1). Arrivals at a
/// busy station are dropped, so a station never holds two sessions. Durations
/// are exponential, truncated at 24 h. The base rate is solved so the expected
/// hourly occupancy equals `target_occupancy`.
struct SynthConfig {
  std::size_t n_stations = 57;
  std::size_t weeks = 10;
  std::uint64_t rng_seed = 0;
  double target_occupancy = 0.1073;
  double mean_session_minutes = 216.0;
  double workhour_arrival_multiplier = 6.0;
  double neighbor_coupling = 0.5;
  /// Chance that an hour is a campus demand surge.
  double surge_probability = 0.1;
  /// Hour 0 of the generated timeline; a Monday midnight by default.
  Timestamp origin = parse_rfc3339("2020-01-06T00:00:00Z");

  void validate() const;
  std::size_t hours() const { return weeks * 168; }
  std::vector<std::string> station_ids() const;
};

/// Per-station arrival rate (sessions per hour while idle) for each hour of
/// day that makes the expected hourly occupancy equal the target. Throws
/// std::invalid_argument if the target cannot be reached.
std::vector<double> calibrated_arrival_rates(const SynthConfig& config);

/// Expected hourly occupancy of one station under the given per-hour-of-day
/// base rates and demand mixture, from the periodic steady state of the
/// idle/busy process.
double expected_occupancy(const std::vector<double>& hourly_rates, double mean_session_hours,
                          double coupling = 0.0, double surge_probability = 1.0);

/// Events in plug-time order.
std::vector<EventRecord> generate(const SynthConfig& config);

/// generate() then discretize() over the config's timeline and stations.
OccupancyGrid generate_grid(const SynthConfig& config);

}  // namespace nolr
