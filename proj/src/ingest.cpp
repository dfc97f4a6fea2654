#include "nolr/ingest.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace nolr {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

OccupancyGrid::OccupancyGrid(Timestamp origin, std::vector<std::string> stations, std::size_t hours)
    : origin_(origin), stations_(std::move(stations)), hours_(hours) {
  if (!on_hour_boundary(origin_)) throw std::invalid_argument("grid origin must be on an hour boundary");
  if (hours_ == 0) throw std::invalid_argument("grid needs at least one hour");
  std::unordered_set<std::string> seen;
  for (const auto& s : stations_) {
    if (s.empty()) throw std::invalid_argument("empty station id");
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate station id '" + s + "'");
  }
  cells_.assign(stations_.size() * hours_, 0);
}

std::size_t OccupancyGrid::station_index(const std::string& id) const {
  auto it = std::find(stations_.begin(), stations_.end(), id);
  if (it == stations_.end()) throw std::invalid_argument("unknown station '" + id + "'");
  return static_cast<std::size_t>(it - stations_.begin());
}

std::vector<EventRecord> parse_events(std::istream& in) {
  std::vector<EventRecord> events;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (line_no == 1 && view.size() >= 3 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    if (view.empty()) continue;
    auto fields = split(view, ',');
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "station_id" || fields[1] != "plug_time" ||
          fields[2] != "unplug_time") {
        throw ParseError(line_no, "expected header 'station_id,plug_time,unplug_time'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(line_no, "empty station_id");
    EventRecord ev;
    ev.station_id = std::string(fields[0]);
    try {
      ev.plug_time = parse_rfc3339(fields[1]);
      ev.unplug_time = parse_rfc3339(fields[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    if (!(ev.plug_time < ev.unplug_time)) {
      throw ParseError(line_no, "unplug_time " + std::string(fields[2]) +
                                    " is not after plug_time " + std::string(fields[1]));
    }
    events.push_back(std::move(ev));
  }
  if (!header_seen) throw ParseError(line_no + 1, "missing header");
  return events;
}

void write_events(std::ostream& out, std::span<const EventRecord> events) {
  out << "station_id,plug_time,unplug_time\n";
  for (const auto& ev : events) {
    out << ev.station_id << ',' << format_rfc3339(ev.plug_time) << ','
        << format_rfc3339(ev.unplug_time) << '\n';
  }
}

OccupancyGrid discretize(std::span<const EventRecord> events, Timestamp origin, std::int64_t hours,
                         const std::vector<std::string>& stations) {
  if (hours <= 0) throw std::invalid_argument("hour count must be positive");
  OccupancyGrid grid(origin, stations, static_cast<std::size_t>(hours));

  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < stations.size(); ++i) index.emplace(grid.stations()[i], i);

  const std::int64_t t0 = origin.time_since_epoch().count();
  const std::int64_t t_end = t0 + hours * kSecondsPerHour;
  for (const auto& ev : events) {
    auto it = index.find(ev.station_id);
    if (it == index.end()) throw std::invalid_argument("unknown station '" + ev.station_id + "'");
    std::int64_t a = std::max(ev.plug_time.time_since_epoch().count(), t0);
    std::int64_t b = std::min(ev.unplug_time.time_since_epoch().count(), t_end);
    if (a >= b) continue;
    // Occupied seconds are [a, b); the last one is b - 1.
    std::int64_t first = (a - t0) / kSecondsPerHour;
    std::int64_t last = (b - 1 - t0) / kSecondsPerHour;
    for (std::int64_t h = first; h <= last; ++h) grid.set(it->second, static_cast<std::size_t>(h), 1);
  }
  return grid;
}

GridStats grid_stats(const OccupancyGrid& grid) {
  GridStats st;
  st.total_cells = grid.station_count() * grid.hours();
  std::size_t empty_hours = 0;
  for (std::size_t h = 0; h < grid.hours(); ++h) {
    std::size_t busy = 0;
    for (std::size_t s = 0; s < grid.station_count(); ++s) busy += grid.at(s, h);
    st.occupied_cells += busy;
    if (busy == 0) ++empty_hours;
  }
  if (st.total_cells > 0) {
    st.occupancy_rate = static_cast<double>(st.occupied_cells) / static_cast<double>(st.total_cells);
  }
  st.event_free_fraction = static_cast<double>(empty_hours) / static_cast<double>(grid.hours());
  return st;
}

void write_grid_csv(std::ostream& out, const OccupancyGrid& grid) {
  out << "hour_index";
  for (const auto& s : grid.stations()) out << ',' << s;
  out << '\n';
  std::string line;
  for (std::size_t h = 0; h < grid.hours(); ++h) {
    line = std::to_string(h);
    for (std::size_t s = 0; s < grid.station_count(); ++s) {
      line += ',';
      line += grid.at(s, h) ? '1' : '0';
    }
    line += '\n';
    out << line;
  }
}

OccupancyGrid read_grid_csv(std::istream& in, Timestamp origin) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> stations;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  auto header = split(trim(line), ',');
  if (header.empty() || header[0] != "hour_index") throw ParseError(line_no, "expected 'hour_index' header");
  for (std::size_t i = 1; i < header.size(); ++i) stations.emplace_back(header[i]);

  std::vector<std::vector<std::uint8_t>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = trim(line);
    if (view.empty()) continue;
    auto fields = split(view, ',');
    if (fields.size() != stations.size() + 1) {
      throw ParseError(line_no, "expected " + std::to_string(stations.size() + 1) + " fields");
    }
    if (fields[0] != std::to_string(rows.size())) {
      throw ParseError(line_no, "hour_index out of sequence");
    }
    std::vector<std::uint8_t> row(stations.size());
    for (std::size_t s = 0; s < stations.size(); ++s) {
      if (fields[s + 1] == "1") row[s] = 1;
      else if (fields[s + 1] == "0") row[s] = 0;
      else throw ParseError(line_no, "cell must be 0 or 1");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(line_no, "grid has no hours");
  OccupancyGrid grid(origin, std::move(stations), rows.size());
  for (std::size_t h = 0; h < rows.size(); ++h) {
    for (std::size_t s = 0; s < grid.station_count(); ++s) grid.set(s, h, rows[h][s]);
  }
  return grid;
}

std::vector<std::string> stations_in_order(std::span<const EventRecord> events) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& ev : events) {
    if (seen.insert(ev.station_id).second) out.push_back(ev.station_id);
  }
  return out;
}

}  // namespace nolr
