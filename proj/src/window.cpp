#include "nolr/window.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nolr {

void WindowPolicy::validate() const {
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i] < 0 || boundaries[i] >= 24) {
      throw std::invalid_argument("window boundary " + std::to_string(boundaries[i]) + " outside [0, 24)");
    }
    if (i > 0 && boundaries[i] <= boundaries[i - 1]) {
      throw std::invalid_argument("window boundaries must be strictly increasing");
    }
  }
  if (offsets.size() != segment_count() || lengths.size() != segment_count()) {
    throw std::invalid_argument("need one offset and one length per segment (" +
                                std::to_string(segment_count()) + ")");
  }
  for (auto n : lengths) {
    if (n < 1) throw std::invalid_argument("window lengths must be at least 1");
  }
}

std::size_t segment_of(int hour_of_day, const WindowPolicy& policy) {
  if (hour_of_day < 0 || hour_of_day >= 24) throw std::invalid_argument("hour of day outside [0, 24)");
  std::size_t seg = 0;
  while (seg < policy.boundaries.size() && hour_of_day >= policy.boundaries[seg]) ++seg;
  return seg;
}

std::int64_t window_start(std::size_t test_hour_index, int hour_of_day, const WindowPolicy& policy) {
  const auto seg = segment_of(hour_of_day, policy);
  return static_cast<std::int64_t>(test_hour_index) - 23 - (hour_of_day - policy.offsets[seg]);
}

std::optional<TrainingWindow> select_window(std::size_t test_hour_index, int hour_of_day,
                                            const WindowPolicy& policy) {
  const auto seg = segment_of(hour_of_day, policy);
  const std::int64_t start = window_start(test_hour_index, hour_of_day, policy);
  if (start < 0) return std::nullopt;
  const auto first = static_cast<std::size_t>(start);
  if (first >= test_hour_index) return std::nullopt;
  // Long windows are cut at the test hour so training never sees it.
  return TrainingWindow{first, std::min(policy.lengths[seg], test_hour_index - first)};
}

}  // namespace nolr
