#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nolr/ingest.hpp"

namespace nolr {

/// Half-open range of absolute hour indices [lo, hi).
struct HourRange {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const { return hi > lo ? hi - lo : 0; }
  bool contains(std::size_t h) const { return h >= lo && h < hi; }
  friend bool operator==(const HourRange&, const HourRange&) = default;
};

/// Dense row-major 0/1 matrix.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  BinaryMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  std::uint8_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::uint8_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const std::uint8_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<std::uint8_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Leave-one-station-out supervised data: each row of X holds every other
/// station's occupancy at one hour, y holds the target station's.
struct Dataset {
  BinaryMatrix X;
  std::vector<std::uint8_t> y;
  std::string target_station;
  std::vector<std::size_t> hour_index_of_row;
  /// Station ids of X's columns, in grid order.
  std::vector<std::string> column_stations;

  std::size_t rows() const { return y.size(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

Dataset build_dataset(const OccupancyGrid& grid, const std::string& target_station, HourRange range);

/// Neighbor occupancy vector at one hour (target excluded), in grid order.
std::vector<std::uint8_t> neighbor_row(const OccupancyGrid& grid, std::size_t target_index, std::size_t hour);

/// Rows of `a` followed by rows of `b`; both must share target and columns.
Dataset concat(const Dataset& a, const Dataset& b);

}  // namespace nolr
