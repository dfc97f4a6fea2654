#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nolr/time.hpp"

namespace nolr {

/// One charging session at a station.
struct EventRecord {
  std::string station_id;
  Timestamp plug_time;
  Timestamp unplug_time;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

/// Raised for malformed event logs; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Stations x hours binary occupancy matrix anchored at an hour-aligned origin.
class OccupancyGrid {
 public:
  OccupancyGrid(Timestamp origin, std::vector<std::string> stations, std::size_t hours);

  Timestamp origin() const { return origin_; }
  const std::vector<std::string>& stations() const { return stations_; }
  std::size_t station_count() const { return stations_.size(); }
  std::size_t hours() const { return hours_; }

  /// Index of `id` in station order; throws std::invalid_argument if unknown.
  std::size_t station_index(const std::string& id) const;

  std::uint8_t at(std::size_t station, std::size_t hour) const {
    return cells_[station * hours_ + hour];
  }
  void set(std::size_t station, std::size_t hour, std::uint8_t v) {
    cells_[station * hours_ + hour] = v ? 1 : 0;
  }

  /// Contiguous hourly series of one station.
  std::span<const std::uint8_t> row(std::size_t station) const {
    return {cells_.data() + station * hours_, hours_};
  }

  /// Hour of day (0..23) of hour index `h`.
  int hour_of_day_at(std::size_t h) const {
    return static_cast<int>((hour_of_day(origin_) + static_cast<std::int64_t>(h)) % kHoursPerDay);
  }

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  Timestamp origin_;
  std::vector<std::string> stations_;
  std::size_t hours_;
  std::vector<std::uint8_t> cells_;  // station-major
};

struct GridStats {
  std::size_t occupied_cells = 0;
  std::size_t total_cells = 0;
  double occupancy_rate = 0.0;
  /// Fraction of hours in which no station is occupied.
  double event_free_fraction = 0.0;
};

/// Reads `station_id,plug_time,unplug_time` CSV with RFC 3339 timestamps.
std::vector<EventRecord> parse_events(std::istream& in);

void write_events(std::ostream& out, std::span<const EventRecord> events);

/// Marks hour h of station s occupied iff some event of s overlaps
/// [origin + h, origin + h + 1) for a nonzero duration.
OccupancyGrid discretize(std::span<const EventRecord> events, Timestamp origin, std::int64_t hours,
                         const std::vector<std::string>& stations);

GridStats grid_stats(const OccupancyGrid& grid);

/// Writes `hour_index,<station ids...>` then one `0`/`1` row per hour.
void write_grid_csv(std::ostream& out, const OccupancyGrid& grid);

/// Reads the format written by write_grid_csv. The file carries no timestamps,
/// so the caller supplies the origin of hour index 0.
OccupancyGrid read_grid_csv(std::istream& in, Timestamp origin);

/// Unique station ids in order of first appearance.
std::vector<std::string> stations_in_order(std::span<const EventRecord> events);

}  // namespace nolr
