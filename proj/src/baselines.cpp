#include "nolr/baselines.hpp"

#include <stdexcept>

namespace nolr {

std::vector<std::uint8_t> persistence_predict(std::span<const std::uint8_t> y, HourRange test_range) {
  if (test_range.lo == 0) throw std::invalid_argument("persistence needs a previous hour (lo >= 1)");
  if (test_range.lo >= test_range.hi || test_range.hi > y.size()) {
    throw std::invalid_argument("persistence test range out of bounds");
  }
  return {y.begin() + static_cast<std::ptrdiff_t>(test_range.lo - 1),
          y.begin() + static_cast<std::ptrdiff_t>(test_range.hi - 1)};
}

std::vector<std::uint8_t> traditional_logreg(const Dataset& train, const Dataset& test,
                                             const TrainConfig& config) {
  if (train.rows() == 0) throw std::invalid_argument("traditional_logreg: empty training set");
  if (train.X.cols() != test.X.cols() || train.column_stations != test.column_stations) {
    throw std::invalid_argument("traditional_logreg: train/test columns differ");
  }
  const auto model = nolr::train(train.X, train.y, config);
  std::vector<std::uint8_t> out(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) out[i] = classify(test.X.row(i), model);
  return out;
}

}  // namespace nolr
