#include <random>

#include "doctest.h"
#include "nolr/matrixize.hpp"

using namespace nolr;

namespace {

OccupancyGrid table_grid() {
  // Stations a, b, c, s; hours 1..3 of the vectorization example at indices 0..2.
  OccupancyGrid g(parse_rfc3339("2020-01-06T00:00:00Z"), {"a", "b", "c", "s"}, 3);
  const int cells[3][4] = {{1, 0, 1, 1}, {0, 1, 0, 1}, {0, 0, 0, 0}};
  for (std::size_t h = 0; h < 3; ++h)
    for (std::size_t s = 0; s < 4; ++s) g.set(s, h, static_cast<std::uint8_t>(cells[h][s]));
  return g;
}

}  // namespace

TEST_CASE("build_dataset follows the vectorization table") {
  auto ds = build_dataset(table_grid(), "s", {0, 3});
  REQUIRE(ds.rows() == 3);
  REQUIRE(ds.X.cols() == 3);
  CHECK(ds.column_stations == std::vector<std::string>{"a", "b", "c"});
  CHECK(std::vector<std::uint8_t>(ds.X.row(0).begin(), ds.X.row(0).end()) == std::vector<std::uint8_t>{1, 0, 1});
  CHECK(ds.y[0] == 1);
  CHECK(std::vector<std::uint8_t>(ds.X.row(2).begin(), ds.X.row(2).end()) == std::vector<std::uint8_t>{0, 0, 0});
  CHECK(ds.y[2] == 0);
  CHECK(ds.hour_index_of_row == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("target in the middle is dropped from the columns") {
  auto ds = build_dataset(table_grid(), "b", {1, 3});
  CHECK(ds.column_stations == std::vector<std::string>{"a", "c", "s"});
  CHECK(ds.y == std::vector<std::uint8_t>{1, 0});
  CHECK(ds.hour_index_of_row == std::vector<std::size_t>{1, 2});
}

TEST_CASE("two-station grid gives one column") {
  OccupancyGrid g(parse_rfc3339("2020-01-06T00:00:00Z"), {"a", "s"}, 4);
  auto ds = build_dataset(g, "s", {0, 4});
  CHECK(ds.X.cols() == 1);
  CHECK(ds.rows() == 4);
}

TEST_CASE("build_dataset errors") {
  auto g = table_grid();
  CHECK_THROWS_AS(build_dataset(g, "zz", {0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(build_dataset(g, "s", {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(build_dataset(g, "s", {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_dataset(g, "s", {0, 4}), std::invalid_argument);
}

TEST_CASE("every cell matches the grid and ranges concatenate") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 5, m = 2 + rng() % 20;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("S" + std::to_string(i));
    OccupancyGrid g(parse_rfc3339("2020-01-06T00:00:00Z"), ids, m);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t h = 0; h < m; ++h) g.set(s, h, rng() & 1);
    const std::size_t t = rng() % n;
    const std::size_t mid = 1 + rng() % (m - 1);
    auto whole = build_dataset(g, ids[t], {0, m});
    for (std::size_t k = 0; k < whole.rows(); ++k) {
      std::size_t j = 0;
      for (std::size_t s = 0; s < n; ++s) {
        if (s == t) continue;
        REQUIRE(whole.X(k, j++) == g.at(s, whole.hour_index_of_row[k]));
      }
      REQUIRE(whole.y[k] == g.at(t, whole.hour_index_of_row[k]));
    }
    auto joined = concat(build_dataset(g, ids[t], {0, mid}), build_dataset(g, ids[t], {mid, m}));
    REQUIRE(joined == whole);
  }
}
