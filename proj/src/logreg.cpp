#include "nolr/logreg.hpp"

#include <cmath>
#include <stdexcept>

namespace nolr {

void TrainConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (!(error_tolerance >= 0.0)) throw std::invalid_argument("error_tolerance must be nonnegative");
}

double net_input(std::span<const double> x, std::span<const double> w) {
  if (x.size() != w.size()) throw std::invalid_argument("net_input: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * w[i];
  return acc;
}

double net_input(std::span<const std::uint8_t> x, std::span<const double> w) {
  if (x.size() != w.size()) throw std::invalid_argument("net_input: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) acc += w[i];
  }
  return acc;
}

std::vector<double> forward(const BinaryMatrix& X, std::span<const double> w) {
  if (X.cols() != w.size()) throw std::invalid_argument("forward: column count differs from weight length");
  std::vector<double> y_hat(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i) y_hat[i] = sigmoid(net_input(X.row(i), w));
  return y_hat;
}

BackwardResult backward(const BinaryMatrix& X, std::span<const std::uint8_t> y,
                        std::span<const double> y_hat, std::span<const double> w, DerivativeMode mode) {
  if (X.cols() != w.size() || X.rows() != y.size() || y.size() != y_hat.size()) {
    throw std::invalid_argument("backward: shape mismatch");
  }
  BackwardResult out;
  out.w.assign(w.begin(), w.end());
  double sq = 0.0;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const double r = static_cast<double>(y[i]) - y_hat[i];
    sq += r * r;
    const double slope = mode == DerivativeMode::Paper ? sigmoid_derivative(y_hat[i])
                                                       : y_hat[i] * (1.0 - y_hat[i]);
    const double a = r * slope;
    // X^T A: row i contributes a to every column where it is set.
    auto row = X.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j]) out.w[j] += a;
    }
  }
  out.error_norm = std::sqrt(sq);
  return out;
}

std::vector<double> initial_weights(std::size_t count, std::uint64_t seed) {
  // splitmix64: fixed output sequence on every platform, unlike std distributions.
  std::vector<double> w(count);
  std::uint64_t state = seed;
  for (auto& v : w) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    v = static_cast<double>(z >> 11) * 0x1.0p-53;
  }
  return w;
}

WeightVector train(const BinaryMatrix& X, std::span<const std::uint8_t> y, const TrainConfig& config) {
  config.validate();
  if (X.rows() == 0) throw std::invalid_argument("train: empty training set");
  if (X.rows() != y.size()) throw std::invalid_argument("train: X rows differ from y length");

  WeightVector model;
  model.w = initial_weights(X.cols(), config.rng_seed);
  double previous = 0.0;
  for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
    auto y_hat = forward(X, model.w);
    auto step = backward(X, y, y_hat, model.w, config.derivative_mode);
    model.w = std::move(step.w);
    model.iterations_run = iter;
    model.final_error_norm = step.error_norm;
    if (iter > 1 && std::abs(step.error_norm - previous) < config.error_tolerance) break;
    previous = step.error_norm;
  }
  return model;
}

std::uint8_t classify(std::span<const std::uint8_t> x, const WeightVector& w) {
  return net_input(x, w.w) > 0.0 ? 1 : 0;
}

void write_weights_csv(std::ostream& out, std::span<const std::string> columns, const WeightVector& w) {
  if (columns.size() != w.w.size()) throw std::invalid_argument("weight/column count mismatch");
  out << "column_station_id,weight\n";
  auto old = out.precision(17);
  for (std::size_t i = 0; i < columns.size(); ++i) out << columns[i] << ',' << w.w[i] << '\n';
  out.precision(old);
}

}  // namespace nolr
