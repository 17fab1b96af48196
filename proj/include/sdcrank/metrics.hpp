#pragma once

#include <cstddef>

#include "sdcrank/matrix.hpp"

namespace sdcrank {

// Cells whose original absolute value falls below this threshold are
// excluded from the relative-deviation metric and counted instead.
inline constexpr double kRelDeviationEpsilon = 1e-12;

// All information-loss metrics for one (original, masked) pair.
// mae/mse/il1/il1s operate on raw values; rmae/rmse/brmae/brmse on ranks.
// brmae and brmse always lie in [0, 1].
struct MetricReport {
    double mae = 0.0;
    double mse = 0.0;
    double il1 = 0.0;
    double il1s = 0.0;
    double rmae = 0.0;
    double rmse = 0.0;
    double brmae = 0.0;
    double brmse = 0.0;
    std::size_t il1_skipped_cells = 0;
};

struct Il1Result {
    double value = 0.0;
    std::size_t skipped_cells = 0;
};

// Mean absolute / squared cell deviation, averaged over all n*p cells.
double mae(const NumericMatrix& original, const NumericMatrix& masked);
double mse(const NumericMatrix& original, const NumericMatrix& masked);

// Mean relative absolute deviation |x - x~| / |x|; near-zero originals
// are skipped and counted.
Il1Result il1(const NumericMatrix& original, const NumericMatrix& masked);

// Scaled variation: |x - x~| / (sqrt(2) * S_j) averaged over n*p cells,
// where S_j is the sample standard deviation of original column j.
// Columns with zero spread are rejected.
double il1s(const NumericMatrix& original, const NumericMatrix& masked);

// Rank-based mean absolute / squared error over n*p cells.
double rmae(const RankMatrix& original_ranks, const RankMatrix& masked_ranks);
double rmse(const RankMatrix& original_ranks, const RankMatrix& masked_ranks);

// Rank-based errors divided by their maximal attainable values, in [0, 1].
// Undefined for single-record inputs.
double brmae(const RankMatrix& original_ranks, const RankMatrix& masked_ranks);
double brmse(const RankMatrix& original_ranks, const RankMatrix& masked_ranks);

// Ranks both matrices once under the given policy and evaluates every
// metric from the same rank matrices.
MetricReport full_report(const NumericMatrix& original, const NumericMatrix& masked,
                         const TieBreakPolicy& policy);

}  // namespace sdcrank
