#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nolr/matrixize.hpp"

namespace nolr {

/// Which factor scales the error vector in the backward pass.
enum class DerivativeMode {
  /// phi(y_hat) * (1 - phi(y_hat)): the sigmoid derivative evaluated at the
  /// already-activated output.
  Paper,
  /// y_hat * (1 - y_hat): the derivative at the net input.
  Textbook,
};

struct TrainConfig {
  std::size_t max_iterations = 1000;
  /// Stop once |‖r‖ - ‖r_prev‖| falls below this.
  double error_tolerance = 1e-6;
  std::uint64_t rng_seed = 0;
  DerivativeMode derivative_mode = DerivativeMode::Paper;

  void validate() const;
};

/// Per-neighbor weights plus how training ended.
struct WeightVector {
  std::vector<double> w;
  std::size_t iterations_run = 0;
  double final_error_norm = 0.0;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

double net_input(std::span<const double> x, std::span<const double> w);
double net_input(std::span<const std::uint8_t> x, std::span<const double> w);

inline double sigmoid(double t) {
  // Branching keeps exp() from overflowing for large |t|.
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

inline double sigmoid_derivative(double t) {
  const double s = sigmoid(t);
  return s * (1.0 - s);
}

std::vector<double> forward(const BinaryMatrix& X, std::span<const double> w);

struct BackwardResult {
  std::vector<double> w;
  double error_norm = 0.0;
};

/// One error-weighted-derivative step: r = y - y_hat, A = r * g(y_hat),
/// w' = w + X^T A.
BackwardResult backward(const BinaryMatrix& X, std::span<const std::uint8_t> y,
                        std::span<const double> y_hat, std::span<const double> w,
                        DerivativeMode mode = DerivativeMode::Paper);

/// Uniform [0, 1) initial weights from `seed`, reproducible across platforms.
std::vector<double> initial_weights(std::size_t count, std::uint64_t seed);

/// Forward/backward passes until the error norm settles or the iteration cap.
WeightVector train(const BinaryMatrix& X, std::span<const std::uint8_t> y, const TrainConfig& config);

/// 1 iff the net input is strictly positive (probability above one half).
std::uint8_t classify(std::span<const std::uint8_t> x, const WeightVector& w);

/// `column_station_id,weight` CSV.
void write_weights_csv(std::ostream& out, std::span<const std::string> columns, const WeightVector& w);

}  // namespace nolr
