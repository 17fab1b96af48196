#include "sdcrank/rank_distance.hpp"

#include <cstdlib>
#include <limits>
#include <string>

namespace sdcrank {

namespace {

using int128 = __int128;

int128 closed_form_max_sq(std::int64_t n) {
    const int128 nn = n;
    return nn * (nn * nn - 1) / 3;
}

void validate_pair(std::span<const std::int64_t> r1, std::span<const std::int64_t> r2) {
    if (r1.size() != r2.size()) {
        throw_error(ErrorKind::InvalidInput,
                    "rank vector lengths differ: " + std::to_string(r1.size()) + " vs " +
                        std::to_string(r2.size()));
    }
    if (r1.empty()) {
        throw_error(ErrorKind::InvalidInput, "rank vectors must be non-empty");
    }
    if (static_cast<std::int64_t>(r1.size()) > max_safe_n()) {
        throw_error(ErrorKind::Overflow,
                    "length " + std::to_string(r1.size()) + " exceeds the overflow-safe limit " +
                        std::to_string(max_safe_n()));
    }
    if (!is_rank_permutation(r1) || !is_rank_permutation(r2)) {
        throw_error(ErrorKind::InvalidInput, "input is not a permutation of 1..n");
    }
}

}  // namespace

std::int64_t max_safe_n() {
    static const std::int64_t limit = [] {
        std::int64_t lo = 1, hi = 4'000'000;
        while (lo < hi) {
            const std::int64_t mid = lo + (hi - lo + 1) / 2;
            if (closed_form_max_sq(mid) <= int128(std::numeric_limits<std::int64_t>::max())) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        return lo;
    }();
    return limit;
}

RankDistanceBounds bounds_for(std::int64_t n) {
    if (n < 1) {
        throw_error(ErrorKind::InvalidInput, "n must be at least 1");
    }
    if (n > max_safe_n()) {
        throw_error(ErrorKind::Overflow,
                    "n = " + std::to_string(n) + " exceeds the overflow-safe limit " +
                        std::to_string(max_safe_n()));
    }

    const std::int64_t k = (n % 2 == 0) ? n / 2 : (n - 1) / 2;

    std::int64_t sum_abs = 0;
    std::int64_t sum_sq = 0;
    for (std::int64_t i = 1; i <= k; ++i) {
        const std::int64_t term = n - 2 * i + 1;
        sum_abs += term;
        sum_sq += term * term;
    }
    const std::int64_t max_abs = 2 * sum_abs;
    const std::int64_t max_sq = 2 * sum_sq;

    const std::int64_t closed_abs = (n * n) / 2;
    const std::int64_t closed_sq = static_cast<std::int64_t>(closed_form_max_sq(n));
    if (max_abs != closed_abs || max_sq != closed_sq) {
        throw_error(ErrorKind::InvalidInput,
                    "internal inconsistency: summation and closed forms disagree for n = " +
                        std::to_string(n));
    }

    return RankDistanceBounds{n, k, max_abs, max_sq};
}

std::int64_t abs_rank_distance(std::span<const std::int64_t> r1,
                               std::span<const std::int64_t> r2) {
    validate_pair(r1, r2);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < r1.size(); ++i) {
        sum += std::llabs(r1[i] - r2[i]);
    }
    return sum;
}

std::int64_t sq_rank_distance(std::span<const std::int64_t> r1,
                              std::span<const std::int64_t> r2) {
    validate_pair(r1, r2);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < r1.size(); ++i) {
        const std::int64_t d = r1[i] - r2[i];
        sum += d * d;
    }
    return sum;
}

double bounded_abs_rank_distance(std::span<const std::int64_t> r1,
                                 std::span<const std::int64_t> r2) {
    const std::int64_t dist = abs_rank_distance(r1, r2);
    if (r1.size() < 2) {
        throw_error(ErrorKind::DegenerateInput,
                    "bounded rank distance is undefined for a single record");
    }
    const RankDistanceBounds bounds = bounds_for(static_cast<std::int64_t>(r1.size()));
    return static_cast<double>(dist) / static_cast<double>(bounds.max_abs);
}

double bounded_sq_rank_distance(std::span<const std::int64_t> r1,
                                std::span<const std::int64_t> r2) {
    const std::int64_t dist = sq_rank_distance(r1, r2);
    if (r1.size() < 2) {
        throw_error(ErrorKind::DegenerateInput,
                    "bounded rank distance is undefined for a single record");
    }
    const RankDistanceBounds bounds = bounds_for(static_cast<std::int64_t>(r1.size()));
    return static_cast<double>(dist) / static_cast<double>(bounds.max_sq);
}

}  // namespace sdcrank
