#pragma once

// Independent reference computations for the unit and acceptance tests. None
// of these call into the library's implementation of the thing they check.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nolr/ingest.hpp"

namespace nolr::oracle {

/// Walks every occupied second of every event and marks the hour containing it.
inline std::vector<std::vector<std::uint8_t>> discretize_by_seconds(const std::vector<EventRecord>& events,
                                                                   Timestamp origin, std::int64_t hours,
                                                                   const std::vector<std::string>& stations) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < stations.size(); ++i) index[stations[i]] = i;
  std::vector<std::vector<std::uint8_t>> grid(stations.size(), std::vector<std::uint8_t>(hours, 0));
  const std::int64_t t0 = origin.time_since_epoch().count();
  for (const auto& ev : events) {
    const std::size_t s = index.at(ev.station_id);
    for (std::int64_t t = ev.plug_time.time_since_epoch().count(); t < ev.unplug_time.time_since_epoch().count();
         ++t) {
      const std::int64_t rel = t - t0;
      if (rel < 0 || rel >= hours * 3600) continue;
      grid[s][rel / 3600] = 1;
    }
  }
  return grid;
}

/// x - 23 - (h - v) with v = 0 before 08:00, 8 before 17:00, 17 after.
inline std::int64_t default_window_start(std::int64_t x, int h) {
  int v;
  if (h < 8) {
    v = 0;
  } else if (h < 17) {
    v = 8;
  } else {
    v = 17;
  }
  return x - 23 - (h - v);
}

inline std::int64_t default_window_length(int h) {
  if (h < 8) return 10;
  if (h < 17) return 12;
  return 1;
}

inline long double sigmoid_ld(long double t) { return 1.0L / (1.0L + std::exp(-t)); }

/// Central difference of the logistic function.
inline double sigmoid_slope_fd(double t, double step = 1e-6) {
  return static_cast<double>((sigmoid_ld(t + step) - sigmoid_ld(t - step)) / (2.0L * step));
}

/// 1 - transitions / length over y[lo..hi), where a transition is y[k] != y[k-1].
inline double persistence_accuracy_closed_form(const std::vector<std::uint8_t>& y, std::size_t lo, std::size_t hi) {
  std::size_t transitions = 0;
  for (std::size_t k = lo; k < hi; ++k) transitions += y[k] != y[k - 1];
  return static_cast<double>(hi - lo - transitions) / static_cast<double>(hi - lo);
}

}  // namespace nolr::oracle
