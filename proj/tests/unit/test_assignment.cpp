#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dasr/assignment.hpp"
#include "dasr/error.hpp"

using namespace dasr;

namespace {

struct Brute {
  std::int64_t cost;
  std::vector<std::size_t> perm;  // lexicographically first optimum
};

Brute brute_force(const CostMatrix& c) {
  std::vector<std::size_t> perm(c.size());
  std::iota(perm.begin(), perm.end(), 0);
  Brute best{-1, {}};
  do {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) total += c[i][perm[i]];
    if (best.cost < 0 || total < best.cost) best = {total, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("small matrices") {
  auto a = assign_streams({{0, 3}, {3, 0}});
  CHECK(a.cost == 0);
  CHECK(a.col_for_row == std::vector<std::size_t>{0, 1});

  a = assign_streams({{2, 1}, {1, 2}});
  CHECK(a.cost == 2);
  CHECK(a.col_for_row == std::vector<std::size_t>{1, 0});

  a = assign_streams({});
  CHECK(a.cost == 0);
  CHECK(a.col_for_row.empty());

  a = assign_streams({{7}});
  CHECK(a.cost == 7);
}

TEST_CASE("ties resolve to the lexicographically smallest assignment") {
  const auto a = assign_streams({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  CHECK(a.col_for_row == std::vector<std::size_t>{0, 1, 2});
  const auto b = assign_streams({{5, 0, 0}, {0, 5, 0}, {0, 0, 5}});
  CHECK(b.cost == 0);
  CHECK(b.col_for_row == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("contract errors") {
  CHECK_THROWS_AS(assign_streams({{1, 2}, {3}}), ContractError);
  CHECK_THROWS_AS(assign_streams({{1, 2}}), ContractError);
  CHECK_THROWS_AS(assign_streams({{0, -1}, {1, 0}}), ContractError);
}

TEST_CASE("random matrices against exhaustive enumeration") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + trial % 6;
    // small value ranges make ties frequent
    std::uniform_int_distribution<std::int64_t> v(0, trial % 3 == 0 ? 2 : 50);
    CostMatrix c(n, std::vector<std::int64_t>(n));
    for (auto& row : c) {
      for (auto& x : row) x = v(rng);
    }
    const auto got = assign_streams(c);
    const auto want = brute_force(c);
    CHECK(got.cost == want.cost);
    CHECK(got.col_for_row == want.perm);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += c[i][got.col_for_row[i]];
    CHECK(sum == got.cost);
  }
}

TEST_CASE("large values") {
  const std::int64_t big = std::int64_t{1} << 50;
  const auto a = assign_streams({{big, 0}, {0, big}});
  CHECK(a.cost == 0);
}
