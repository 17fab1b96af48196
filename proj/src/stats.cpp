#include "sdcrank/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sdcrank/rank_distance.hpp"
#include "sdcrank/rng.hpp"

namespace sdcrank {

std::vector<double> midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t lo = 0;
    while (lo < n) {
        std::size_t hi = lo + 1;
        while (hi < n && values[order[hi]] == values[order[lo]]) ++hi;
        const double avg = (static_cast<double>(lo + 1) + static_cast<double>(hi)) / 2.0;
        for (std::size_t pos = lo; pos < hi; ++pos) ranks[order[pos]] = avg;
        lo = hi;
    }
    return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw_error(ErrorKind::InvalidInput, "vectors must have equal length");
    }
    if (a.size() < 2) {
        throw_error(ErrorKind::InvalidInput, "correlation requires at least two observations");
    }
    const auto is_constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (is_constant(a) || is_constant(b)) {
        throw_error(ErrorKind::DegenerateInput, "correlation is undefined for a constant vector");
    }

    const std::vector<double> ra = midranks(a);
    const std::vector<double> rb = midranks(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0;  // midranks always average to (n+1)/2

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = ra[i] - mean;
        const double db = rb[i] - mean;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    const double rho = cov / std::sqrt(var_a * var_b);
    return std::clamp(rho, -1.0, 1.0);
}

namespace {

PermutationDistanceRecord make_record(const std::vector<std::int64_t>& identity,
                                      const std::vector<std::int64_t>& perm,
                                      const RankDistanceBounds& bounds) {
    PermutationDistanceRecord rec;
    rec.permutation = perm;
    rec.abs_distance = abs_rank_distance(identity, perm);
    rec.sq_distance = sq_rank_distance(identity, perm);
    rec.bounded_abs = static_cast<double>(rec.abs_distance) / static_cast<double>(bounds.max_abs);
    rec.bounded_sq = static_cast<double>(rec.sq_distance) / static_cast<double>(bounds.max_sq);
    return rec;
}

std::vector<std::int64_t> identity_permutation(std::int64_t n) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), std::int64_t{1});
    return v;
}

}  // namespace

std::vector<PermutationDistanceRecord> enumerate_permutation_distances(std::int64_t n) {
    if (n < 2 || n > 8) {
        throw_error(ErrorKind::InvalidInput,
                    "full enumeration supports n in [2, 8], got " + std::to_string(n));
    }
    const RankDistanceBounds bounds = bounds_for(n);
    const std::vector<std::int64_t> identity = identity_permutation(n);

    std::vector<PermutationDistanceRecord> records;
    std::vector<std::int64_t> perm = identity;
    do {
        records.push_back(make_record(identity, perm, bounds));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return records;
}

std::vector<PermutationDistanceRecord> sample_permutation_distances(std::int64_t n,
                                                                    std::size_t count,
                                                                    std::uint64_t seed) {
    if (n < 2) {
        throw_error(ErrorKind::InvalidInput, "sampling requires n >= 2");
    }
    if (count < 1) {
        throw_error(ErrorKind::InvalidInput, "sample count must be at least 1");
    }
    const RankDistanceBounds bounds = bounds_for(n);
    const std::vector<std::int64_t> identity = identity_permutation(n);

    std::vector<PermutationDistanceRecord> records;
    records.reserve(count + 2);
    Rng rng(seed);
    std::vector<std::int64_t> perm = identity;
    for (std::size_t s = 0; s < count; ++s) {
        perm = identity;
        shuffle(perm, rng);
        records.push_back(make_record(identity, perm, bounds));
    }
    records.push_back(make_record(identity, identity, bounds));
    std::vector<std::int64_t> reversal(identity.rbegin(), identity.rend());
    records.push_back(make_record(identity, reversal, bounds));
    return records;
}

std::pair<std::size_t, std::size_t> distinct_value_counts(
    const std::vector<PermutationDistanceRecord>& records) {
    if (records.empty()) {
        throw_error(ErrorKind::InvalidInput, "record list must be non-empty");
    }
    std::set<std::int64_t> abs_values;
    std::set<std::int64_t> sq_values;
    for (const auto& rec : records) {
        abs_values.insert(rec.abs_distance);
        sq_values.insert(rec.sq_distance);
    }
    return {abs_values.size(), sq_values.size()};
}

}  // namespace sdcrank
