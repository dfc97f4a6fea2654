#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nolr/logreg.hpp"
#include "nolr/matrixize.hpp"

namespace nolr {

/// Predicts each hour in `test_range` as the observed value of the hour before.
std::vector<std::uint8_t> persistence_predict(std::span<const std::uint8_t> y, HourRange test_range);

/// Trains one model on `train` and classifies every row of `test`.
std::vector<std::uint8_t> traditional_logreg(const Dataset& train, const Dataset& test,
                                             const TrainConfig& config);

}  // namespace nolr
