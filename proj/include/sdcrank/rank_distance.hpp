#pragma once

#include <cstdint>
#include <span>

#include "sdcrank/matrix.hpp"

namespace sdcrank {

// Largest attainable rank displacement sums for vectors of length n,
// reached when one permutation is the full reversal of the other.
// K pair-offsets contribute to the sums: K = n/2 for even n, (n-1)/2 for
// odd n. max_abs = 2 * sum_{k=1..K} (n - 2k + 1) and
// max_sq = 2 * sum_{k=1..K} (n - 2k + 1)^2; their closed forms are
// floor(n^2 / 2) and n (n^2 - 1) / 3.
struct RankDistanceBounds {
    std::int64_t n;
    std::int64_t k;
    std::int64_t max_abs;
    std::int64_t max_sq;
};

// Largest n for which max_sq fits in a signed 64-bit integer; inputs
// beyond it are rejected with Overflow.
std::int64_t max_safe_n();

// Computes both the summation form and the closed form of the maxima and
// checks they agree before returning.
RankDistanceBounds bounds_for(std::int64_t n);

// Sum of |r1_i - r2_i| over two same-length permutations of 1..n.
// Always an even integer.
std::int64_t abs_rank_distance(std::span<const std::int64_t> r1,
                               std::span<const std::int64_t> r2);

// Sum of (r1_i - r2_i)^2.
std::int64_t sq_rank_distance(std::span<const std::int64_t> r1,
                              std::span<const std::int64_t> r2);

// Distances divided by their maxima, in [0, 1]. Undefined for n = 1
// (zero denominator), reported as DegenerateInput.
double bounded_abs_rank_distance(std::span<const std::int64_t> r1,
                                 std::span<const std::int64_t> r2);
double bounded_sq_rank_distance(std::span<const std::int64_t> r1,
                                std::span<const std::int64_t> r2);

}  // namespace sdcrank
