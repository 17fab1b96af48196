#include "sdcrank/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "sdcrank/rank_distance.hpp"
#include "sdcrank/ranking.hpp"

namespace sdcrank {

namespace {

using int128 = __int128;

// Kahan compensated accumulator; keeps grid sweeps reproducible to the
// last bit regardless of summation chunking.
class KahanSum {
public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

void require_same_shape(const NumericMatrix& a, const NumericMatrix& b) {
    if (!a.same_shape(b)) {
        throw_error(ErrorKind::InvalidInput,
                    "shape mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

void require_same_shape(const RankMatrix& a, const RankMatrix& b) {
    if (!a.same_shape(b)) {
        throw_error(ErrorKind::InvalidInput,
                    "shape mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

double sample_std(const NumericMatrix& m, std::size_t j) {
    const std::size_t n = m.rows();
    if (n < 2) return 0.0;
    KahanSum mean_sum;
    for (std::size_t i = 0; i < n; ++i) mean_sum.add(m(i, j));
    const double mean = mean_sum.value() / static_cast<double>(n);
    KahanSum var_sum;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = m(i, j) - mean;
        var_sum.add(d * d);
    }
    return std::sqrt(var_sum.value() / static_cast<double>(n - 1));
}

// Exact integer rank-error sums, totalled per column then widened so the
// cross-column total cannot overflow.
int128 total_abs_rank_error(const RankMatrix& a, const RankMatrix& b) {
    int128 total = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        std::int64_t col_sum = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) col_sum += std::llabs(a(i, j) - b(i, j));
        total += col_sum;
    }
    return total;
}

int128 total_sq_rank_error(const RankMatrix& a, const RankMatrix& b) {
    int128 total = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        std::int64_t col_sum = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const std::int64_t d = a(i, j) - b(i, j);
            col_sum += d * d;
        }
        total += col_sum;
    }
    return total;
}

void require_rank_shape(const RankMatrix& a, const RankMatrix& b, bool bounded) {
    require_same_shape(a, b);
    if (static_cast<std::int64_t>(a.rows()) > max_safe_n()) {
        throw_error(ErrorKind::Overflow,
                    "record count exceeds the overflow-safe limit " + std::to_string(max_safe_n()));
    }
    if (bounded && a.rows() < 2) {
        throw_error(ErrorKind::DegenerateInput,
                    "bounded rank metrics are undefined for a single record");
    }
}

}  // namespace

double mae(const NumericMatrix& original, const NumericMatrix& masked) {
    require_same_shape(original, masked);
    KahanSum sum;
    const auto a = original.values();
    const auto b = masked.values();
    for (std::size_t idx = 0; idx < a.size(); ++idx) sum.add(std::fabs(a[idx] - b[idx]));
    return sum.value() / static_cast<double>(a.size());
}

double mse(const NumericMatrix& original, const NumericMatrix& masked) {
    require_same_shape(original, masked);
    KahanSum sum;
    const auto a = original.values();
    const auto b = masked.values();
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        const double d = a[idx] - b[idx];
        sum.add(d * d);
    }
    return sum.value() / static_cast<double>(a.size());
}

Il1Result il1(const NumericMatrix& original, const NumericMatrix& masked) {
    require_same_shape(original, masked);
    KahanSum sum;
    std::size_t skipped = 0;
    const auto a = original.values();
    const auto b = masked.values();
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        if (std::fabs(a[idx]) < kRelDeviationEpsilon) {
            ++skipped;
            continue;
        }
        sum.add(std::fabs(a[idx] - b[idx]) / std::fabs(a[idx]));
    }
    const std::size_t included = a.size() - skipped;
    const double value = included == 0 ? 0.0 : sum.value() / static_cast<double>(included);
    return Il1Result{value, skipped};
}

double il1s(const NumericMatrix& original, const NumericMatrix& masked) {
    require_same_shape(original, masked);
    const double sqrt2 = std::sqrt(2.0);
    KahanSum sum;
    for (std::size_t j = 0; j < original.cols(); ++j) {
        const double s = sample_std(original, j);
        if (!(s > 0.0)) {
            throw_error(ErrorKind::DegenerateColumn,
                        "original column index " + std::to_string(j) +
                            " has zero standard deviation");
        }
        const double scale = 1.0 / (sqrt2 * s);
        for (std::size_t i = 0; i < original.rows(); ++i) {
            sum.add(std::fabs(original(i, j) - masked(i, j)) * scale);
        }
    }
    return sum.value() / static_cast<double>(original.rows() * original.cols());
}

double rmae(const RankMatrix& original_ranks, const RankMatrix& masked_ranks) {
    require_rank_shape(original_ranks, masked_ranks, false);
    const int128 total = total_abs_rank_error(original_ranks, masked_ranks);
    return static_cast<double>(total) /
           static_cast<double>(original_ranks.rows() * original_ranks.cols());
}

double rmse(const RankMatrix& original_ranks, const RankMatrix& masked_ranks) {
    require_rank_shape(original_ranks, masked_ranks, false);
    const int128 total = total_sq_rank_error(original_ranks, masked_ranks);
    return static_cast<double>(total) /
           static_cast<double>(original_ranks.rows() * original_ranks.cols());
}

double brmae(const RankMatrix& original_ranks, const RankMatrix& masked_ranks) {
    require_rank_shape(original_ranks, masked_ranks, true);
    const RankDistanceBounds bounds = bounds_for(static_cast<std::int64_t>(original_ranks.rows()));
    const int128 total = total_abs_rank_error(original_ranks, masked_ranks);
    const int128 denom = int128(original_ranks.cols()) * bounds.max_abs;
    return static_cast<double>(total) / static_cast<double>(denom);
}

double brmse(const RankMatrix& original_ranks, const RankMatrix& masked_ranks) {
    require_rank_shape(original_ranks, masked_ranks, true);
    const RankDistanceBounds bounds = bounds_for(static_cast<std::int64_t>(original_ranks.rows()));
    const int128 total = total_sq_rank_error(original_ranks, masked_ranks);
    const int128 denom = int128(original_ranks.cols()) * bounds.max_sq;
    return static_cast<double>(total) / static_cast<double>(denom);
}

MetricReport full_report(const NumericMatrix& original, const NumericMatrix& masked,
                         const TieBreakPolicy& policy) {
    require_same_shape(original, masked);
    const RankMatrix original_ranks = rank_matrix(original, policy);
    const RankMatrix masked_ranks = rank_matrix(masked, policy);

    MetricReport report;
    report.mae = mae(original, masked);
    report.mse = mse(original, masked);
    const Il1Result rel = il1(original, masked);
    report.il1 = rel.value;
    report.il1_skipped_cells = rel.skipped_cells;
    report.il1s = il1s(original, masked);
    report.rmae = rmae(original_ranks, masked_ranks);
    report.rmse = rmse(original_ranks, masked_ranks);
    report.brmae = brmae(original_ranks, masked_ranks);
    report.brmse = brmse(original_ranks, masked_ranks);
    return report;
}

}  // namespace sdcrank
