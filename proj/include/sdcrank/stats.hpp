#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sdcrank/matrix.hpp"

namespace sdcrank {

// One permutation of 1..n with its distances to the identity vector
// (1, 2, ..., n), raw and divided by the maximal values.
struct PermutationDistanceRecord {
    std::vector<std::int64_t> permutation;
    std::int64_t abs_distance = 0;
    std::int64_t sq_distance = 0;
    double bounded_abs = 0.0;
    double bounded_sq = 0.0;
};

// Average ranks (midranks for ties), 1-based.
std::vector<double> midranks(std::span<const double> values);

// Spearman rank correlation: Pearson correlation of the midrank
// transforms. Inputs must have equal length >= 2 and not be constant.
double spearman(std::span<const double> a, std::span<const double> b);

// All n! permutations of 1..n in lexicographic order with their
// distances to the identity. Capped at n = 8.
std::vector<PermutationDistanceRecord> enumerate_permutation_distances(std::int64_t n);

// `count` uniformly random permutations, with the identity and the full
// reversal always appended at the end.
std::vector<PermutationDistanceRecord> sample_permutation_distances(std::int64_t n,
                                                                    std::size_t count,
                                                                    std::uint64_t seed);

// Number of distinct absolute and squared distances in a record list.
std::pair<std::size_t, std::size_t> distinct_value_counts(
    const std::vector<PermutationDistanceRecord>& records);

}  // namespace sdcrank
