#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sdcrank/metrics.hpp"
#include "sdcrank/rank_distance.hpp"
#include "sdcrank/ranking.hpp"
#include "sdcrank/rng.hpp"
#include "synthetic.hpp"

using namespace sdcrank;
using sdcrank::testing::gaussian_microdata;
using sdcrank::testing::random_rank_matrix;
using sdcrank::testing::reversed_ranks;

TEST_CASE("mae averages absolute deviations over all cells") {
    const NumericMatrix a(2, 1, {1, 2});
    const NumericMatrix b(2, 1, {2, 4});
    CHECK(mae(a, a) == 0.0);
    CHECK(mae(a, b) == doctest::Approx(1.5).epsilon(1e-15));

    // Duplicating the column leaves the per-cell average unchanged.
    const NumericMatrix a2(2, 2, {1, 1, 2, 2});
    const NumericMatrix b2(2, 2, {2, 2, 4, 4});
    CHECK(mae(a2, b2) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("mse averages squared deviations and scales quadratically") {
    const NumericMatrix a(2, 1, {1, 2});
    const NumericMatrix b(2, 1, {2, 4});
    CHECK(mse(a, a) == 0.0);
    CHECK(mse(a, b) == doctest::Approx(2.5).epsilon(1e-15));

    // Doubling the deviations: masked = original + 2 * (masked - original).
    const NumericMatrix b_scaled(2, 1, {3, 6});
    CHECK(mse(a, b_scaled) == doctest::Approx(4.0 * 2.5).epsilon(1e-15));
}

TEST_CASE("il1 is the mean relative deviation with near-zero cells skipped") {
    const NumericMatrix a(1, 1, {2});
    const NumericMatrix b(1, 1, {3});
    const Il1Result same = il1(a, a);
    CHECK(same.value == 0.0);
    CHECK(same.skipped_cells == 0);
    CHECK(il1(a, b).value == doctest::Approx(0.5).epsilon(1e-15));

    const NumericMatrix zero(2, 1, {0, 2});
    const NumericMatrix masked(2, 1, {1, 3});
    const Il1Result r = il1(zero, masked);
    CHECK(r.skipped_cells == 1);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("il1s scales deviations by sqrt(2) times the original column spread") {
    const NumericMatrix a(2, 1, {0, 2});
    const NumericMatrix b(2, 1, {1, 3});
    CHECK(il1s(a, a) == 0.0);
    CHECK(il1s(a, b) == doctest::Approx(0.5).epsilon(1e-12));

    const NumericMatrix constant(3, 1, {5, 5, 5});
    try {
        il1s(constant, constant);
        FAIL("expected degenerate-column error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateColumn);
    }
}

TEST_CASE("rank-based errors divide exact integer sums by the cell count") {
    const RankMatrix id3(3, 1, {1, 2, 3});
    const RankMatrix perm(3, 1, {3, 1, 2});
    CHECK(rmae(id3, id3) == 0.0);
    CHECK(rmae(id3, perm) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

    const RankMatrix rev3(3, 1, {3, 2, 1});
    CHECK(rmse(id3, rev3) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));

    const RankMatrix id4(4, 1, {1, 2, 3, 4});
    const RankMatrix rev4(4, 1, {4, 3, 2, 1});
    CHECK(rmse(id4, rev4) == 5.0);
}

TEST_CASE("a fully reversed column attains the rank-error maximum") {
    for (std::size_t n : {2u, 5u, 8u, 31u}) {
        std::vector<std::int64_t> identity(n), reversal(n);
        for (std::size_t i = 0; i < n; ++i) {
            identity[i] = static_cast<std::int64_t>(i) + 1;
            reversal[i] = static_cast<std::int64_t>(n - i);
        }
        const RankMatrix a(n, 1, identity);
        const RankMatrix b(n, 1, reversal);
        const RankDistanceBounds bounds = bounds_for(static_cast<std::int64_t>(n));
        CHECK(rmae(a, b) ==
              doctest::Approx(2.0 / static_cast<double>(n) *
                              static_cast<double>(bounds.max_abs) / 2.0)
                  .epsilon(1e-15));
        CHECK(brmae(a, b) == 1.0);
        CHECK(brmse(a, b) == 1.0);
    }
}

TEST_CASE("bounded rank metrics on mixed columns") {
    // One column permuted to the maximum, one untouched.
    const RankMatrix original(3, 2, {1, 1, 2, 2, 3, 3});
    const RankMatrix masked(3, 2, {3, 1, 1, 2, 2, 3});
    CHECK(brmae(original, original) == 0.0);
    CHECK(brmae(original, masked) == 0.5);

    const RankMatrix id3(3, 1, {1, 2, 3});
    const RankMatrix perm(3, 1, {3, 1, 2});
    CHECK(brmse(id3, perm) == 0.75);
    CHECK(brmse(id3, id3) == 0.0);
}

TEST_CASE("bounded metrics equal the raw metric divided by its maximum") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(40);
        const std::size_t p = 1 + rng.below(4);
        const RankMatrix a = random_rank_matrix(n, p, rng);
        const RankMatrix b = random_rank_matrix(n, p, rng);
        const RankDistanceBounds bounds = bounds_for(static_cast<std::int64_t>(n));
        const double max_rmae =
            2.0 / static_cast<double>(n) * (static_cast<double>(bounds.max_abs) / 2.0);
        const double lhs = brmae(a, b);
        const double rhs = rmae(a, b) / max_rmae;
        if (lhs == 0.0) {
            CHECK(rhs == 0.0);
        } else {
            CHECK(std::fabs(lhs - rhs) / lhs <= 1e-12);
        }
    }
}

TEST_CASE("small-instance enumeration agrees with the bounded metrics") {
    for (std::size_t n = 2; n <= 6; ++n) {
        std::vector<std::int64_t> identity(n);
        std::iota(identity.begin(), identity.end(), std::int64_t{1});
        const RankMatrix id_matrix(n, 1, identity);

        // Enumerated maxima, independent of the closed-form bounds.
        std::int64_t max_abs = 0, max_sq = 0;
        std::vector<std::int64_t> perm = identity;
        do {
            std::int64_t s_abs = 0, s_sq = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::int64_t d = identity[i] - perm[i];
                s_abs += std::abs(d);
                s_sq += d * d;
            }
            max_abs = std::max(max_abs, s_abs);
            max_sq = std::max(max_sq, s_sq);
        } while (std::next_permutation(perm.begin(), perm.end()));

        perm = identity;
        do {
            std::int64_t s_abs = 0, s_sq = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::int64_t d = identity[i] - perm[i];
                s_abs += std::abs(d);
                s_sq += d * d;
            }
            const RankMatrix m(n, 1, perm);
            CHECK(brmae(id_matrix, m) ==
                  doctest::Approx(static_cast<double>(s_abs) / static_cast<double>(max_abs))
                      .epsilon(1e-15));
            CHECK(brmse(id_matrix, m) ==
                  doctest::Approx(static_cast<double>(s_sq) / static_cast<double>(max_sq))
                      .epsilon(1e-15));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("full_report matches the individually invoked metrics") {
    const NumericMatrix original = gaussian_microdata(40, 3, 11);
    NumericMatrix masked = gaussian_microdata(40, 3, 12);

    const auto policy = TieBreakPolicy::first_occurrence();
    const MetricReport report = full_report(original, masked, policy);
    const RankMatrix ro = rank_matrix(original, policy);
    const RankMatrix rm = rank_matrix(masked, policy);

    CHECK(report.mae == mae(original, masked));
    CHECK(report.mse == mse(original, masked));
    CHECK(report.il1 == il1(original, masked).value);
    CHECK(report.il1_skipped_cells == il1(original, masked).skipped_cells);
    CHECK(report.il1s == il1s(original, masked));
    CHECK(report.rmae == rmae(ro, rm));
    CHECK(report.rmse == rmse(ro, rm));
    CHECK(report.brmae == brmae(ro, rm));
    CHECK(report.brmse == brmse(ro, rm));
}

TEST_CASE("full_report on identical matrices is all-zero") {
    const NumericMatrix data = gaussian_microdata(25, 2, 5);
    const MetricReport report = full_report(data, data, TieBreakPolicy::first_occurrence());
    CHECK(report.mae == 0.0);
    CHECK(report.mse == 0.0);
    CHECK(report.il1 == 0.0);
    CHECK(report.il1s == 0.0);
    CHECK(report.rmae == 0.0);
    CHECK(report.rmse == 0.0);
    CHECK(report.brmae == 0.0);
    CHECK(report.brmse == 0.0);
    CHECK(report.il1_skipped_cells == 0);
}

TEST_CASE("column-reversing strictly monotone data attains both bounds") {
    const std::size_t n = 9;
    std::vector<double> values(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        values[i * 2] = static_cast<double>(i);
        values[i * 2 + 1] = std::exp(static_cast<double>(i) / 3.0);
    }
    const NumericMatrix original(n, 2, values);
    std::vector<double> reversed(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        reversed[i * 2] = values[(n - 1 - i) * 2];
        reversed[i * 2 + 1] = values[(n - 1 - i) * 2 + 1];
    }
    const NumericMatrix masked(n, 2, reversed);
    const MetricReport report = full_report(original, masked, TieBreakPolicy::first_occurrence());
    CHECK(report.brmae == 1.0);
    CHECK(report.brmse == 1.0);
}

TEST_CASE("rank metrics are invariant under strictly increasing transforms") {
    const NumericMatrix original = gaussian_microdata(60, 2, 21);
    const NumericMatrix masked = gaussian_microdata(60, 2, 22);

    auto transform = [](const NumericMatrix& m) {
        std::vector<double> out(m.values().begin(), m.values().end());
        for (auto& x : out) x = std::exp(x / 100.0) + x * x * x / 1e4;
        return NumericMatrix(m.rows(), m.cols(), std::move(out));
    };

    const auto policy = TieBreakPolicy::first_occurrence();
    const MetricReport before = full_report(original, masked, policy);
    const MetricReport after = full_report(transform(original), transform(masked), policy);
    CHECK(after.brmae == before.brmae);  // identical rank matrices, exact
    CHECK(after.brmse == before.brmse);
    CHECK(after.mae != before.mae);
}

TEST_CASE("scaling all data by c scales mae by c and mse by c^2, rest unchanged") {
    const NumericMatrix original = gaussian_microdata(50, 3, 31);
    const NumericMatrix masked = gaussian_microdata(50, 3, 32);
    const double c = 7.25;

    auto scale = [&](const NumericMatrix& m) {
        std::vector<double> out(m.values().begin(), m.values().end());
        for (auto& x : out) x *= c;
        return NumericMatrix(m.rows(), m.cols(), std::move(out));
    };

    const auto policy = TieBreakPolicy::first_occurrence();
    const MetricReport before = full_report(original, masked, policy);
    const MetricReport after = full_report(scale(original), scale(masked), policy);
    CHECK(after.mae == doctest::Approx(c * before.mae).epsilon(1e-12));
    CHECK(after.mse == doctest::Approx(c * c * before.mse).epsilon(1e-12));
    CHECK(after.il1 == doctest::Approx(before.il1).epsilon(1e-12));
    CHECK(after.il1s == doctest::Approx(before.il1s).epsilon(1e-12));
    CHECK(after.brmae == before.brmae);
    CHECK(after.brmse == before.brmse);
}

TEST_CASE("bounded rank metrics stay in range on random inputs") {
    Rng rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(50);
        const std::size_t p = 1 + rng.below(5);
        const RankMatrix a = random_rank_matrix(n, p, rng);
        const RankMatrix b = random_rank_matrix(n, p, rng);
        const double vabs = brmae(a, b);
        const double vsq = brmse(a, b);
        CHECK(vabs >= 0.0);
        CHECK(vabs <= 1.0);
        CHECK(vsq >= 0.0);
        CHECK(vsq <= 1.0);
        CHECK(brmae(a, reversed_ranks(a)) == 1.0);
        CHECK(brmse(a, reversed_ranks(a)) == 1.0);
    }
}

TEST_CASE("metric preconditions are enforced") {
    const NumericMatrix a(2, 1, {1, 2});
    const NumericMatrix b(1, 2, {1, 2});
    try {
        mae(a, b);
        FAIL("expected shape mismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }

    const RankMatrix single(1, 1, {1});
    try {
        brmae(single, single);
        FAIL("expected degenerate input");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateInput);
    }
    CHECK(rmae(single, single) == 0.0);  // unbounded variant is fine at n = 1
}
