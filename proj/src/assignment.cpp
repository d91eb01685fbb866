#include "dasr/assignment.hpp"

#include <limits>
#include <string>

#include "dasr/error.hpp"

namespace dasr {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Tries to re-match `row` to a free column along tight edges, visiting only
// rows >= first_free_row. Classic Kuhn augmenting-path search.
bool augment(std::size_t row, std::size_t first_free_row, const std::vector<std::vector<char>>& tight,
             std::vector<std::size_t>& col_for_row, std::vector<std::size_t>& row_for_col,
             std::vector<char>& seen) {
  const std::size_t n = tight.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!tight[row][j] || seen[j]) continue;
    const std::size_t holder = row_for_col[j];
    if (holder != kNone && holder < first_free_row) continue;
    seen[j] = 1;
    if (holder == kNone || augment(holder, first_free_row, tight, col_for_row, row_for_col, seen)) {
      col_for_row[row] = j;
      row_for_col[j] = row;
      return true;
    }
  }
  return false;
}

}  // namespace

Assignment assign_streams(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cost[i].size() != n) {
      throw ContractError("assign_streams: matrix is not square (row " + std::to_string(i) + " has " +
                          std::to_string(cost[i].size()) + " entries, expected " +
                          std::to_string(n) + ")");
    }
    for (auto c : cost[i]) {
      if (c < 0) throw ContractError("assign_streams: negative cost");
    }
  }
  if (n == 0) return {};

  // Hungarian method with row/column potentials, 1-based with a sentinel column 0.
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::int64_t> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_for_row(n, kNone), row_for_col(n, kNone);
  for (std::size_t j = 1; j <= n; ++j) {
    col_for_row[p[j] - 1] = j - 1;
    row_for_col[j - 1] = p[j] - 1;
  }

  // Every optimal matching uses only edges with zero reduced cost under the
  // final potentials. Walk rows in order and pin each to its smallest tight
  // column that still admits a perfect matching of the remaining rows.
  std::vector<std::vector<char>> tight(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) tight[i][j] = cost[i][j] - u[i + 1] - v[j + 1] == 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < col_for_row[i]; ++j) {
      if (!tight[i][j]) continue;
      const std::size_t holder = row_for_col[j];
      if (holder < i) continue;  // pinned earlier
      auto trial_col = col_for_row;
      auto trial_row = row_for_col;
      const std::size_t freed = trial_col[i];
      trial_col[i] = j;
      trial_row[j] = i;
      trial_row[freed] = kNone;
      trial_col[holder] = kNone;
      std::vector<char> seen(n, 0);
      seen[j] = 1;
      if (augment(holder, i + 1, tight, trial_col, trial_row, seen)) {
        col_for_row = std::move(trial_col);
        row_for_col = std::move(trial_row);
        break;
      }
    }
  }

  Assignment out{std::move(col_for_row), 0};
  for (std::size_t i = 0; i < n; ++i) out.cost += cost[i][out.col_for_row[i]];
  return out;
}

}  // namespace dasr
