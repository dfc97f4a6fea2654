#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace nolr {

/// Time-of-day segmentation of training windows. Segment i covers hours of day
/// [boundaries[i-1], boundaries[i]); its window starts at
/// x - 23 - (h - offsets[i]) and spans lengths[i] hours.
struct WindowPolicy {
  std::vector<int> boundaries{8, 17};
  std::vector<int> offsets{0, 8, 17};
  std::vector<std::size_t> lengths{10, 12, 1};

  std::size_t segment_count() const { return boundaries.size() + 1; }

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;

  friend bool operator==(const WindowPolicy&, const WindowPolicy&) = default;
};

struct TrainingWindow {
  std::size_t start_hour_index = 0;
  std::size_t length = 0;

  std::size_t end() const { return start_hour_index + length; }
  friend bool operator==(const TrainingWindow&, const TrainingWindow&) = default;
};

/// Zero-based segment index of an hour of day.
std::size_t segment_of(int hour_of_day, const WindowPolicy& policy);

/// Signed start hour x - 23 - (h - v_i); may be negative.
std::int64_t window_start(std::size_t test_hour_index, int hour_of_day, const WindowPolicy& policy);

/// The training window for the test point at absolute hour `test_hour_index`
/// whose hour of day is `hour_of_day`. The length is capped so the window
/// ends at or before the test hour. Returns nullopt when the window would
/// begin before hour 0 of the timeline or leaves no hours to train on.
std::optional<TrainingWindow> select_window(std::size_t test_hour_index, int hour_of_day,
                                            const WindowPolicy& policy);

}  // namespace nolr
