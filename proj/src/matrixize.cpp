#include "nolr/matrixize.hpp"

#include <stdexcept>

namespace nolr {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix data size mismatch");
}

std::vector<std::uint8_t> neighbor_row(const OccupancyGrid& grid, std::size_t target_index, std::size_t hour) {
  std::vector<std::uint8_t> x;
  x.reserve(grid.station_count() - 1);
  for (std::size_t s = 0; s < grid.station_count(); ++s) {
    if (s != target_index) x.push_back(grid.at(s, hour));
  }
  return x;
}

Dataset build_dataset(const OccupancyGrid& grid, const std::string& target_station, HourRange range) {
  const std::size_t target = grid.station_index(target_station);
  if (grid.station_count() < 2) throw std::invalid_argument("need at least two stations");
  if (range.lo >= range.hi) throw std::invalid_argument("empty or inverted hour range");
  if (range.hi > grid.hours()) throw std::invalid_argument("hour range exceeds grid");

  const std::size_t n = grid.station_count();
  Dataset ds;
  ds.target_station = target_station;
  ds.X = BinaryMatrix(range.size(), n - 1);
  ds.y.resize(range.size());
  ds.hour_index_of_row.resize(range.size());
  for (std::size_t s = 0; s < n; ++s) {
    if (s != target) ds.column_stations.push_back(grid.stations()[s]);
  }
  for (std::size_t k = 0; k < range.size(); ++k) {
    const std::size_t h = range.lo + k;
    std::size_t col = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (s == target) continue;
      ds.X(k, col++) = grid.at(s, h);
    }
    ds.y[k] = grid.at(target, h);
    ds.hour_index_of_row[k] = h;
  }
  return ds;
}

Dataset concat(const Dataset& a, const Dataset& b) {
  if (a.target_station != b.target_station || a.column_stations != b.column_stations) {
    throw std::invalid_argument("datasets differ in target or columns");
  }
  Dataset out;
  out.target_station = a.target_station;
  out.column_stations = a.column_stations;
  const std::size_t cols = a.X.cols();
  out.X = BinaryMatrix(a.rows() + b.rows(), cols);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.X(r, c) = a.X(r, c);
  }
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.X(a.rows() + r, c) = b.X(r, c);
  }
  out.y = a.y;
  out.y.insert(out.y.end(), b.y.begin(), b.y.end());
  out.hour_index_of_row = a.hour_index_of_row;
  out.hour_index_of_row.insert(out.hour_index_of_row.end(), b.hour_index_of_row.begin(),
                               b.hour_index_of_row.end());
  return out;
}

}  // namespace nolr
