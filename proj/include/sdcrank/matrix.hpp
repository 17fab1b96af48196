#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdcrank/error.hpp"

namespace sdcrank {

// Dense n x p table of real-valued microdata, row-major. Immutable after
// construction; construction rejects empty shapes and non-finite cells.
class NumericMatrix {
public:
    NumericMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                  std::vector<std::string> column_names = {});

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t i, std::size_t j) const {
        return values_[i * cols_ + j];
    }

    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(values_).subspan(i * cols_, cols_);
    }
    std::vector<double> column(std::size_t j) const;

    bool has_column_names() const noexcept { return !column_names_.empty(); }
    const std::vector<std::string>& column_names() const noexcept { return column_names_; }

    bool same_shape(const NumericMatrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
    std::vector<std::string> column_names_;
};

// True when `ranks` holds each of 1..n exactly once.
bool is_rank_permutation(std::span<const std::int64_t> ranks);

// Column-wise ranks of a NumericMatrix: every column is a permutation of
// 1..n. Construction validates the permutation property per column.
class RankMatrix {
public:
    RankMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> ranks);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::int64_t operator()(std::size_t i, std::size_t j) const {
        return ranks_[i * cols_ + j];
    }

    std::span<const std::int64_t> values() const noexcept { return ranks_; }
    std::vector<std::int64_t> column(std::size_t j) const;

    bool same_shape(const RankMatrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int64_t> ranks_;
};

// How equal values are assigned distinct ranks.
struct TieBreakPolicy {
    enum class Kind {
        FirstOccurrence,  // ties ranked in order of appearance
        SeededRandom,     // ties shuffled by a seeded generator
    };

    Kind kind = Kind::FirstOccurrence;
    std::uint64_t seed = 0;

    static TieBreakPolicy first_occurrence() { return {Kind::FirstOccurrence, 0}; }
    static TieBreakPolicy seeded_random(std::uint64_t seed) {
        return {Kind::SeededRandom, seed};
    }
};

}  // namespace sdcrank
