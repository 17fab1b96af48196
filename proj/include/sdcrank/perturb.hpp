#pragma once

#include <cstdint>
#include <string>

#include "sdcrank/matrix.hpp"

namespace sdcrank {

enum class PerturbMethod {
    Mdav,
    NoiseIndependent,
    NoiseCorrelated,
    RankSwap,
};

const char* to_string(PerturbMethod method);
PerturbMethod parse_method(const std::string& name);

// A masking request: which method, its scalar parameter (group size k,
// noise percentage, or swap fraction P), and the seed for stochastic
// methods.
struct PerturbationSpec {
    PerturbMethod method;
    double parameter = 0.0;
    std::uint64_t seed = 0;
};

// Microaggregation by maximum distance to average vector. Records are
// grouped k at a time (one remainder group of size k..2k-1) and replaced
// by their group's column means. Distances use z-score standardized
// columns. Deterministic.
NumericMatrix mdav(const NumericMatrix& data, std::int64_t k);

// Additive zero-mean Gaussian noise. Independent mode scales each
// column's variance by pct/100; correlated mode draws rows from
// (pct/100) times the sample covariance of the data via Cholesky
// factorization. Deterministic given the seed.
NumericMatrix add_noise(const NumericMatrix& data, double pct, bool correlated,
                        std::uint64_t seed);

// Rank swapping: per column, records in ascending value order are paired
// with a uniformly chosen unswapped partner at most floor(p_fraction * n)
// positions above them and their values exchanged. Preserves each
// column's value multiset. Deterministic given the seed.
NumericMatrix rank_swap(const NumericMatrix& data, double p_fraction, std::uint64_t seed);

// Validates the spec against the data and dispatches to the method.
NumericMatrix apply_perturbation(const NumericMatrix& data, const PerturbationSpec& spec);

}  // namespace sdcrank
