#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "sdcrank/metrics.hpp"
#include "sdcrank/perturb.hpp"
#include "sdcrank/rank_distance.hpp"
#include "sdcrank/ranking.hpp"
#include "sdcrank/rng.hpp"
#include "synthetic.hpp"

using namespace sdcrank;
using sdcrank::testing::gaussian_microdata;

namespace {

bool bitwise_equal(const NumericMatrix& a, const NumericMatrix& b) {
    return a.same_shape(b) &&
           std::equal(a.values().begin(), a.values().end(), b.values().begin());
}

}  // namespace

TEST_CASE("mdav with k = 1 is the identity") {
    const NumericMatrix data = gaussian_microdata(23, 3, 1);
    CHECK(bitwise_equal(mdav(data, 1), data));
}

TEST_CASE("mdav with k = n collapses everything to the global centroid") {
    const NumericMatrix data = gaussian_microdata(17, 2, 2);
    const NumericMatrix masked = mdav(data, 17);
    for (std::size_t i = 1; i < masked.rows(); ++i) {
        for (std::size_t j = 0; j < masked.cols(); ++j) {
            CHECK(masked(i, j) == masked(0, j));
        }
    }
    for (std::size_t j = 0; j < masked.cols(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < data.rows(); ++i) mean += data(i, j);
        mean /= static_cast<double>(data.rows());
        CHECK(masked(0, j) == doctest::Approx(mean).epsilon(1e-14));
    }
}

TEST_CASE("mdav groups the line 0,1,2,9,10 as {0,1,2} and {9,10} for k = 2") {
    const NumericMatrix data(5, 1, {0, 1, 2, 9, 10});
    const NumericMatrix masked = mdav(data, 2);
    CHECK(masked(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(masked(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(masked(2, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(masked(3, 0) == doctest::Approx(9.5).epsilon(1e-15));
    CHECK(masked(4, 0) == doctest::Approx(9.5).epsilon(1e-15));
}

TEST_CASE("mdav output has at most floor(n/k) distinct rows and preserves column means") {
    const NumericMatrix data = gaussian_microdata(53, 3, 3);
    for (std::int64_t k : {2, 3, 7, 10}) {
        const NumericMatrix masked = mdav(data, k);
        std::set<std::vector<double>> rows;
        for (std::size_t i = 0; i < masked.rows(); ++i) {
            rows.insert(std::vector<double>(masked.row(i).begin(), masked.row(i).end()));
        }
        CHECK(rows.size() <= 53 / static_cast<std::size_t>(k));
        for (std::size_t j = 0; j < data.cols(); ++j) {
            double orig = 0.0, out = 0.0;
            for (std::size_t i = 0; i < data.rows(); ++i) {
                orig += data(i, j);
                out += masked(i, j);
            }
            CHECK(out / 53.0 == doctest::Approx(orig / 53.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("mdav is deterministic") {
    const NumericMatrix data = gaussian_microdata(31, 2, 4);
    CHECK(bitwise_equal(mdav(data, 4), mdav(data, 4)));
}

TEST_CASE("mdav rejects group sizes outside [1, n]") {
    const NumericMatrix data = gaussian_microdata(5, 1, 5);
    CHECK_THROWS_AS(mdav(data, 0), Error);
    CHECK_THROWS_AS(mdav(data, 6), Error);
}

TEST_CASE("zero-percent noise is the identity") {
    const NumericMatrix data = gaussian_microdata(19, 2, 6);
    CHECK(bitwise_equal(add_noise(data, 0.0, false, 9), data));
    CHECK(bitwise_equal(add_noise(data, 0.0, true, 9), data));
}

TEST_CASE("noise is deterministic given its seed") {
    const NumericMatrix data = gaussian_microdata(19, 2, 7);
    CHECK(bitwise_equal(add_noise(data, 50, false, 1), add_noise(data, 50, false, 1)));
    CHECK(bitwise_equal(add_noise(data, 50, true, 1), add_noise(data, 50, true, 1)));
    CHECK_FALSE(bitwise_equal(add_noise(data, 50, false, 1), add_noise(data, 50, false, 2)));
}

TEST_CASE("independent noise hits the requested per-column variance") {
    const NumericMatrix data = gaussian_microdata(8, 1, 8);
    double col_mean = 0.0;
    for (std::size_t i = 0; i < 8; ++i) col_mean += data(i, 0);
    col_mean /= 8.0;
    double col_var = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        const double d = data(i, 0) - col_mean;
        col_var += d * d;
    }
    col_var /= 7.0;

    const double pct = 100.0;
    const double target = pct / 100.0 * col_var;
    double sum = 0.0, sum_sq = 0.0;
    const std::size_t reps = 4000;
    for (std::size_t r = 0; r < reps; ++r) {
        const NumericMatrix noisy = add_noise(data, pct, false, r);
        for (std::size_t i = 0; i < 8; ++i) {
            const double eps = noisy(i, 0) - data(i, 0);
            sum += eps;
            sum_sq += eps * eps;
        }
    }
    const double count = static_cast<double>(reps * 8);
    const double mean = sum / count;
    const double var = sum_sq / count - mean * mean;
    CHECK(std::fabs(mean) < 0.05 * std::sqrt(target));
    CHECK(std::fabs(var - target) / target < 0.05);
}

TEST_CASE("correlated noise reproduces the scaled sample covariance") {
    const NumericMatrix data = gaussian_microdata(6, 2, 9);

    // Sample covariance of the fixed input, computed here independently.
    double mean0 = 0.0, mean1 = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        mean0 += data(i, 0);
        mean1 += data(i, 1);
    }
    mean0 /= 6.0;
    mean1 /= 6.0;
    double c00 = 0.0, c01 = 0.0, c11 = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        const double d0 = data(i, 0) - mean0;
        const double d1 = data(i, 1) - mean1;
        c00 += d0 * d0;
        c01 += d0 * d1;
        c11 += d1 * d1;
    }
    c00 /= 5.0;
    c01 /= 5.0;
    c11 /= 5.0;

    const double pct = 40.0;
    const double s = pct / 100.0;
    double e00 = 0.0, e01 = 0.0, e11 = 0.0;
    const std::size_t reps = 17000;  // about 1e5 noise rows
    for (std::size_t r = 0; r < reps; ++r) {
        const NumericMatrix noisy = add_noise(data, pct, true, r);
        for (std::size_t i = 0; i < 6; ++i) {
            const double eps0 = noisy(i, 0) - data(i, 0);
            const double eps1 = noisy(i, 1) - data(i, 1);
            e00 += eps0 * eps0;
            e01 += eps0 * eps1;
            e11 += eps1 * eps1;
        }
    }
    const double count = static_cast<double>(reps * 6);
    e00 /= count;
    e01 /= count;
    e11 /= count;

    const double target00 = s * c00, target01 = s * c01, target11 = s * c11;
    const double frob_err = std::sqrt(std::pow(e00 - target00, 2) + 2 * std::pow(e01 - target01, 2) +
                                      std::pow(e11 - target11, 2));
    const double frob_target = std::sqrt(target00 * target00 + 2 * target01 * target01 +
                                         target11 * target11);
    CHECK(frob_err / frob_target < 0.05);
}

TEST_CASE("correlated noise rejects a rank-deficient covariance") {
    // Second column is an exact copy of the first.
    std::vector<double> values;
    const NumericMatrix base = gaussian_microdata(12, 1, 10);
    for (std::size_t i = 0; i < 12; ++i) {
        values.push_back(base(i, 0));
        values.push_back(base(i, 0));
    }
    const NumericMatrix degenerate(12, 2, values);
    try {
        add_noise(degenerate, 10, true, 1);
        FAIL("expected degenerate-column error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateColumn);
    }
}

TEST_CASE("noise rejects negative percentages") {
    const NumericMatrix data = gaussian_microdata(5, 1, 11);
    CHECK_THROWS_AS(add_noise(data, -1.0, false, 1), Error);
}

TEST_CASE("rank swapping with an empty window is the identity") {
    const NumericMatrix data = gaussian_microdata(100, 2, 12);
    // floor(0.0005 * 100) = 0
    CHECK(bitwise_equal(rank_swap(data, 0.0005, 3), data));
    CHECK(bitwise_equal(rank_swap(data, 0.0, 3), data));
}

TEST_CASE("rank swapping permutes each column's values") {
    const NumericMatrix data = gaussian_microdata(80, 3, 13);
    const NumericMatrix masked = rank_swap(data, 0.1, 4);
    for (std::size_t j = 0; j < data.cols(); ++j) {
        std::vector<double> orig = data.column(j);
        std::vector<double> out = masked.column(j);
        std::sort(orig.begin(), orig.end());
        std::sort(out.begin(), out.end());
        CHECK(orig == out);
    }
    CHECK_FALSE(bitwise_equal(masked, data));
}

TEST_CASE("rank swapping displaces no value by more than the window") {
    const NumericMatrix data = gaussian_microdata(90, 2, 14);
    for (double p : {0.02, 0.1, 0.25}) {
        const NumericMatrix masked = rank_swap(data, p, 5);
        const auto window = static_cast<std::int64_t>(
            std::floor(p * static_cast<double>(data.rows())));
        for (std::size_t j = 0; j < data.cols(); ++j) {
            const auto orig_ranks =
                rank_column(data.column(j), TieBreakPolicy::first_occurrence());
            const auto masked_ranks =
                rank_column(masked.column(j), TieBreakPolicy::first_occurrence());
            for (std::size_t i = 0; i < data.rows(); ++i) {
                CHECK(std::abs(orig_ranks[i] - masked_ranks[i]) <= window);
            }
        }

        // Capped displacement in turn caps the bounded rank error at
        // n * w / max_abs.
        const MetricReport report =
            full_report(data, masked, TieBreakPolicy::first_occurrence());
        const RankDistanceBounds bounds = bounds_for(static_cast<std::int64_t>(data.rows()));
        const double cap = static_cast<double>(data.rows()) * static_cast<double>(window) /
                           static_cast<double>(bounds.max_abs);
        CHECK(report.brmae <= cap);
    }
}

TEST_CASE("rank swapping is deterministic given its seed") {
    const NumericMatrix data = gaussian_microdata(60, 2, 15);
    CHECK(bitwise_equal(rank_swap(data, 0.1, 8), rank_swap(data, 0.1, 8)));
    CHECK_FALSE(bitwise_equal(rank_swap(data, 0.1, 8), rank_swap(data, 0.1, 9)));
}

TEST_CASE("rank swapping rejects fractions outside [0, 1]") {
    const NumericMatrix data = gaussian_microdata(10, 1, 16);
    CHECK_THROWS_AS(rank_swap(data, -0.1, 1), Error);
    CHECK_THROWS_AS(rank_swap(data, 1.5, 1), Error);
}

TEST_CASE("apply_perturbation validates the spec before dispatching") {
    const NumericMatrix data = gaussian_microdata(10, 2, 17);
    CHECK_THROWS_AS(apply_perturbation(data, {PerturbMethod::Mdav, 2.5, 0}), Error);
    CHECK(bitwise_equal(apply_perturbation(data, {PerturbMethod::Mdav, 1.0, 0}), data));
    CHECK(bitwise_equal(apply_perturbation(data, {PerturbMethod::NoiseIndependent, 25.0, 3}),
                        add_noise(data, 25.0, false, 3)));
    CHECK(bitwise_equal(apply_perturbation(data, {PerturbMethod::NoiseCorrelated, 25.0, 3}),
                        add_noise(data, 25.0, true, 3)));
    CHECK(bitwise_equal(apply_perturbation(data, {PerturbMethod::RankSwap, 0.2, 3}),
                        rank_swap(data, 0.2, 3)));
}

TEST_CASE("method names round-trip through the parser") {
    CHECK(parse_method("mdav") == PerturbMethod::Mdav);
    CHECK(parse_method("noise") == PerturbMethod::NoiseIndependent);
    CHECK(parse_method("noise-ind") == PerturbMethod::NoiseIndependent);
    CHECK(parse_method("noise-corr") == PerturbMethod::NoiseCorrelated);
    CHECK(parse_method("rankswap") == PerturbMethod::RankSwap);
    CHECK_THROWS_AS(parse_method("swap"), Error);
}
