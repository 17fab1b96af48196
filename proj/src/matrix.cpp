#include "sdcrank/matrix.hpp"

#include <cmath>

namespace sdcrank {

NumericMatrix::NumericMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                             std::vector<std::string> column_names)
    : rows_(rows), cols_(cols), values_(std::move(values)), column_names_(std::move(column_names)) {
    if (rows_ == 0 || cols_ == 0) {
        throw_error(ErrorKind::InvalidInput, "matrix must have at least one row and one column");
    }
    if (values_.size() != rows_ * cols_) {
        throw_error(ErrorKind::InvalidInput,
                    "value count " + std::to_string(values_.size()) + " does not match shape " +
                        std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
        if (!std::isfinite(values_[idx])) {
            throw_error(ErrorKind::InvalidInput,
                        "non-finite value at row " + std::to_string(idx / cols_ + 1) +
                            ", column index " + std::to_string(idx % cols_));
        }
    }
    if (!column_names_.empty() && column_names_.size() != cols_) {
        throw_error(ErrorKind::InvalidInput, "column name count does not match column count");
    }
}

std::vector<double> NumericMatrix::column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = values_[i * cols_ + j];
    return out;
}

bool is_rank_permutation(std::span<const std::int64_t> ranks) {
    const auto n = static_cast<std::int64_t>(ranks.size());
    if (n == 0) return false;
    std::vector<bool> seen(ranks.size(), false);
    for (std::int64_t r : ranks) {
        if (r < 1 || r > n || seen[static_cast<std::size_t>(r - 1)]) return false;
        seen[static_cast<std::size_t>(r - 1)] = true;
    }
    return true;
}

RankMatrix::RankMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> ranks)
    : rows_(rows), cols_(cols), ranks_(std::move(ranks)) {
    if (rows_ == 0 || cols_ == 0) {
        throw_error(ErrorKind::InvalidInput, "rank matrix must have at least one row and one column");
    }
    if (ranks_.size() != rows_ * cols_) {
        throw_error(ErrorKind::InvalidInput, "rank count does not match shape");
    }
    std::vector<std::int64_t> col(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
        for (std::size_t i = 0; i < rows_; ++i) col[i] = ranks_[i * cols_ + j];
        if (!is_rank_permutation(col)) {
            throw_error(ErrorKind::InvalidInput,
                        "column index " + std::to_string(j) + " is not a permutation of 1..n");
        }
    }
}

std::vector<std::int64_t> RankMatrix::column(std::size_t j) const {
    std::vector<std::int64_t> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = ranks_[i * cols_ + j];
    return out;
}

}  // namespace sdcrank
