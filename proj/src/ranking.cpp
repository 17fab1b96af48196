#include "sdcrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdcrank/rng.hpp"

namespace sdcrank {

std::vector<std::int64_t> rank_column(std::span<const double> values,
                                      const TieBreakPolicy& policy) {
    const std::size_t n = values.size();
    if (n == 0) {
        throw_error(ErrorKind::InvalidInput, "cannot rank an empty column");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(values[i])) {
            throw_error(ErrorKind::InvalidInput,
                        "non-finite value at index " + std::to_string(i));
        }
    }

    // Stable sort keeps tied values in order of appearance, which is the
    // FirstOccurrence assignment directly.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    if (policy.kind == TieBreakPolicy::Kind::SeededRandom) {
        Rng rng(policy.seed);
        std::size_t lo = 0;
        while (lo < n) {
            std::size_t hi = lo + 1;
            while (hi < n && values[order[hi]] == values[order[lo]]) ++hi;
            // Shuffle the order of a tie group; the rank slots stay fixed.
            for (std::size_t len = hi - lo; len > 1; --len) {
                std::swap(order[lo + len - 1], order[lo + rng.below(len)]);
            }
            lo = hi;
        }
    }

    std::vector<std::int64_t> ranks(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        ranks[order[pos]] = static_cast<std::int64_t>(pos) + 1;
    }
    return ranks;
}

RankMatrix rank_matrix(const NumericMatrix& data, const TieBreakPolicy& policy) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    std::vector<std::int64_t> ranks(n * p);
    for (std::size_t j = 0; j < p; ++j) {
        TieBreakPolicy column_policy = policy;
        if (policy.kind == TieBreakPolicy::Kind::SeededRandom) {
            column_policy.seed = derive_seed(policy.seed, j);
        }
        const std::vector<double> col = data.column(j);
        const std::vector<std::int64_t> col_ranks = rank_column(col, column_policy);
        for (std::size_t i = 0; i < n; ++i) ranks[i * p + j] = col_ranks[i];
    }
    return RankMatrix(n, p, std::move(ranks));
}

}  // namespace sdcrank
