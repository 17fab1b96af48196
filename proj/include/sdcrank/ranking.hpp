#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sdcrank/matrix.hpp"

namespace sdcrank {

// Ranks of a numeric column, 1-based, always a permutation of 1..n.
// Strictly smaller values get strictly smaller ranks; tied values are
// separated by the policy.
std::vector<std::int64_t> rank_column(std::span<const double> values,
                                      const TieBreakPolicy& policy);

// Column-wise ranking of a whole matrix. Under SeededRandom, each column
// uses a sub-seed derived from (policy seed, column index), so reordering
// or dropping other columns does not change its ranks.
RankMatrix rank_matrix(const NumericMatrix& data, const TieBreakPolicy& policy);

}  // namespace sdcrank
