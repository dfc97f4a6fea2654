#include <random>
#include <sstream>

#include "doctest.h"
#include "nolr/logreg.hpp"
#include "oracles.hpp"

using namespace nolr;

TEST_CASE("net_input") {
  const std::vector<double> x{1, 0, 1}, w{0.5, 0.9, 0.25};
  CHECK(net_input(std::span<const double>(x), w) == 0.75);
  const std::vector<std::uint8_t> xb{1, 0, 1};
  CHECK(net_input(std::span<const std::uint8_t>(xb), w) == 0.75);
  const std::vector<double> zeros(3, 0.0);
  CHECK(net_input(std::span<const double>(zeros), w) == 0.0);
  const std::vector<double> ones{1, 1}, opposite{-2, 2};
  CHECK(net_input(std::span<const double>(ones), opposite) == 0.0);
  const std::vector<double> short_w{1.0};
  CHECK_THROWS_AS(net_input(std::span<const double>(x), short_w), std::invalid_argument);
}

TEST_CASE("sigmoid") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(800.0) == 1.0);
  CHECK(sigmoid(-800.0) >= 0.0);
  // 1 / (1 + e^-1) to 30 digits: 0.731058578630004879251159241822
  CHECK(sigmoid(1.0) == doctest::Approx(0.7310585786300049).epsilon(1e-15));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-30, 30);
  for (int i = 0; i < 1000; ++i) {
    const double t = dist(rng);
    REQUIRE(std::abs(sigmoid(t) + sigmoid(-t) - 1.0) <= 1e-12);
    REQUIRE(sigmoid(t + 0.01) > sigmoid(t));
  }
}

TEST_CASE("sigmoid_derivative") {
  CHECK(sigmoid_derivative(0.0) == 0.25);
  CHECK(sigmoid_derivative(40.0) < 1e-15);
  CHECK(sigmoid_derivative(-40.0) < 1e-15);
  // 0.196611933241481852537424733586
  CHECK(sigmoid_derivative(1.0) == doctest::Approx(0.19661193324148185).epsilon(1e-15));
  CHECK(std::abs(sigmoid_derivative(1.0) - oracle::sigmoid_slope_fd(1.0)) <= 1e-6);
  for (int i = -50; i <= 50; ++i) {
    const double t = i / 10.0;
    REQUIRE(std::abs(sigmoid_derivative(t) - oracle::sigmoid_slope_fd(t)) <= 1e-6);
    REQUIRE(sigmoid_derivative(t) <= 0.25);
  }
}

TEST_CASE("forward") {
  BinaryMatrix zero_row(1, 3);
  const std::vector<double> w{5, -3, 9};
  CHECK(forward(zero_row, w) == std::vector<double>{0.5});

  BinaryMatrix one(1, 2, {1, 0});
  CHECK(forward(one, std::vector<double>{3, 7})[0] == sigmoid(3.0));

  std::mt19937_64 rng(5);
  BinaryMatrix X(4, 3);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 3; ++c) X(r, c) = rng() & 1;
  const std::vector<double> wr{0.3, -1.2, 2.5};
  auto y_hat = forward(X, wr);
  for (std::size_t r = 0; r < 4; ++r) {
    long double acc = 0;
    for (std::size_t c = 0; c < 3; ++c) acc += X(r, c) * wr[c];
    CHECK(y_hat[r] == doctest::Approx(static_cast<double>(oracle::sigmoid_ld(acc))).epsilon(1e-14));
  }
  CHECK_THROWS_AS(forward(X, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("backward") {
  SUBCASE("zero error leaves weights unchanged") {
    BinaryMatrix X(2, 2, {1, 1, 0, 1});
    const std::vector<std::uint8_t> y{1, 0};
    const std::vector<double> y_hat{1.0, 0.0}, w{0.2, 0.7};
    auto out = backward(X, y, y_hat, w);
    CHECK(out.w == w);
    CHECK(out.error_norm == 0.0);
  }
  SUBCASE("single sample hand computation") {
    BinaryMatrix X(1, 1, {1});
    const std::vector<std::uint8_t> y{1};
    const std::vector<double> y_hat{0.5}, w{0.25};
    auto out = backward(X, y, y_hat, w);
    // r = 0.5; phi(0.5) = 0.62245933120185456; A = 0.11750185610079724
    CHECK(out.error_norm == 0.5);
    CHECK(out.w[0] == doctest::Approx(0.25 + 0.11750185610079724).epsilon(1e-15));

    auto textbook = backward(X, y, y_hat, w, DerivativeMode::Textbook);
    CHECK(textbook.w[0] == doctest::Approx(0.25 + 0.5 * 0.25).epsilon(1e-15));
  }
  SUBCASE("shape mismatch") {
    BinaryMatrix X(2, 2);
    const std::vector<std::uint8_t> y{1};
    const std::vector<double> y_hat{0.5}, w{0.1, 0.2};
    CHECK_THROWS_AS(backward(X, y, y_hat, w), std::invalid_argument);
  }
}

TEST_CASE("a zero column never moves") {
  BinaryMatrix X(3, 3, {1, 0, 1, 0, 0, 1, 1, 0, 0});
  const std::vector<std::uint8_t> y{1, 0, 1};
  TrainConfig cfg;
  cfg.rng_seed = 9;
  cfg.error_tolerance = 0.0;
  cfg.max_iterations = 300;
  const auto start = initial_weights(3, cfg.rng_seed);
  auto model = train(X, y, cfg);
  CHECK(model.w[1] == start[1]);
  CHECK(model.iterations_run == 300);
}

TEST_CASE("initial weights are uniform on [0, 1) and seed dependent") {
  auto a = initial_weights(10000, 1), b = initial_weights(10000, 2);
  CHECK(a != b);
  double mean = 0;
  for (double v : a) {
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    mean += v;
  }
  CHECK(mean / a.size() == doctest::Approx(0.5).epsilon(0.02));
  CHECK(initial_weights(10000, 1) == a);
}

TEST_CASE("train reproduces a separable target") {
  // y copies column 1; other columns are noise.
  std::mt19937_64 rng(21);
  BinaryMatrix X(24, 4);
  std::vector<std::uint8_t> y(24);
  for (std::size_t r = 0; r < 24; ++r) {
    for (std::size_t c = 0; c < 4; ++c) X(r, c) = rng() & 1;
    y[r] = X(r, 1);
  }
  TrainConfig cfg;
  cfg.max_iterations = 500;
  cfg.error_tolerance = 0.0;
  cfg.rng_seed = 4;
  auto model = train(X, y, cfg);
  for (std::size_t r = 0; r < 24; ++r) REQUIRE(classify(X.row(r), model) == y[r]);
  CHECK(model.w.size() == 4);
  CHECK(model.final_error_norm >= 0.0);
}

TEST_CASE("error norm settles on separable data") {
  std::mt19937_64 rng(8);
  BinaryMatrix X(20, 5);
  std::vector<std::uint8_t> y(20);
  for (std::size_t r = 0; r < 20; ++r) {
    for (std::size_t c = 0; c < 5; ++c) X(r, c) = rng() & 1;
    y[r] = X(r, 2);
  }
  auto w = initial_weights(5, 3);
  std::vector<double> norms;
  for (int i = 0; i < 400; ++i) {
    auto step = backward(X, y, forward(X, w), w);
    norms.push_back(step.error_norm);
    w = step.w;
  }
  // After a burn-in the default update decreases the error monotonically here.
  for (std::size_t i = 50; i < norms.size(); ++i) REQUIRE(norms[i] <= norms[i - 1] + 1e-12);
  CHECK(norms.back() < norms.front());
}

TEST_CASE("all-zero inputs stop early with constant output") {
  BinaryMatrix X(5, 3);
  const std::vector<std::uint8_t> y{1, 0, 1, 0, 0};
  TrainConfig cfg;
  cfg.rng_seed = 2;
  auto model = train(X, y, cfg);
  CHECK(model.iterations_run == 2);
  CHECK(model.w == initial_weights(3, 2));
  for (std::size_t r = 0; r < 5; ++r) CHECK(classify(X.row(r), model) == 0);
}

TEST_CASE("train is deterministic and validates input") {
  BinaryMatrix X(6, 3, {1, 0, 1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0});
  const std::vector<std::uint8_t> y{1, 0, 1, 0, 1, 0};
  TrainConfig cfg;
  cfg.rng_seed = 77;
  CHECK(train(X, y, cfg) == train(X, y, cfg));
  cfg.rng_seed = 78;
  CHECK(train(X, y, cfg).w != train(X, y, TrainConfig{.rng_seed = 77}).w);

  CHECK_THROWS_AS(train(BinaryMatrix(0, 3), {}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(train(X, std::vector<std::uint8_t>{1}, cfg), std::invalid_argument);
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(train(X, y, cfg), std::invalid_argument);
}

TEST_CASE("classify thresholds the net input") {
  WeightVector w{{1.0, -1.0}, 0, 0.0};
  const std::vector<std::uint8_t> pos{1, 0}, tie{1, 1}, neg{0, 1};
  CHECK(classify(pos, w) == 1);
  CHECK(classify(tie, w) == 0);
  CHECK(classify(neg, w) == 0);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(-1, 1);
  for (int i = 0; i < 500; ++i) {
    WeightVector r{{dist(rng), dist(rng), dist(rng)}, 0, 0.0};
    std::vector<std::uint8_t> x{static_cast<std::uint8_t>(rng() & 1), static_cast<std::uint8_t>(rng() & 1),
                                static_cast<std::uint8_t>(rng() & 1)};
    REQUIRE((classify(x, r) == 1) == (net_input(x, r.w) > 0.0));
  }
}

TEST_CASE("weights csv") {
  WeightVector w{{0.5, -0.25}, 3, 0.1};
  std::vector<std::string> cols{"A", "B"};
  std::ostringstream out;
  write_weights_csv(out, cols, w);
  CHECK(out.str() == "column_station_id,weight\nA,0.5\nB,-0.25\n");
}
