#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dasr {

using CostMatrix = std::vector<std::vector<std::int64_t>>;

struct Assignment {
  std::vector<std::size_t> col_for_row;  // col_for_row[i] = column assigned to row i
  std::int64_t cost = 0;
};

/// Exact minimum-cost perfect matching on a square, non-negative integer
/// matrix (Hungarian method, O(n^3)). Among all optimal matchings the one
/// whose col_for_row vector is lexicographically smallest is returned.
/// Throws ContractError for a non-square matrix or a negative entry.
Assignment assign_streams(const CostMatrix& cost);

}  // namespace dasr
