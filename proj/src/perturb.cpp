#include "sdcrank/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sdcrank/rng.hpp"

namespace sdcrank {

const char* to_string(PerturbMethod method) {
    switch (method) {
        case PerturbMethod::Mdav: return "mdav";
        case PerturbMethod::NoiseIndependent: return "noise-ind";
        case PerturbMethod::NoiseCorrelated: return "noise-corr";
        case PerturbMethod::RankSwap: return "rankswap";
    }
    return "unknown";
}

PerturbMethod parse_method(const std::string& name) {
    if (name == "mdav") return PerturbMethod::Mdav;
    if (name == "noise" || name == "noise-ind") return PerturbMethod::NoiseIndependent;
    if (name == "noise-corr") return PerturbMethod::NoiseCorrelated;
    if (name == "rankswap") return PerturbMethod::RankSwap;
    throw_error(ErrorKind::InvalidInput,
                "unknown perturbation method '" + name +
                    "' (expected mdav, noise, noise-ind, noise-corr, or rankswap)");
}

namespace {

// Column-standardized copy used for MDAV distances; columns without
// spread contribute nothing.
std::vector<double> standardize(const NumericMatrix& data) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    std::vector<double> out(n * p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += data(i, j);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = data(i, j) - mean;
            var += d * d;
        }
        const double sd = n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) : 0.0;
        if (sd > 0.0) {
            for (std::size_t i = 0; i < n; ++i) out[i * p + j] = (data(i, j) - mean) / sd;
        }
    }
    return out;
}

double sq_dist(const std::vector<double>& z, std::size_t p, std::size_t a, std::size_t b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double d = z[a * p + j] - z[b * p + j];
        sum += d * d;
    }
    return sum;
}

double sq_dist_to_point(const std::vector<double>& z, std::size_t p, std::size_t a,
                        const std::vector<double>& point) {
    double sum = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double d = z[a * p + j] - point[j];
        sum += d * d;
    }
    return sum;
}

std::vector<double> centroid_of(const std::vector<double>& z, std::size_t p,
                                const std::vector<std::size_t>& members) {
    std::vector<double> c(p, 0.0);
    for (std::size_t idx : members) {
        for (std::size_t j = 0; j < p; ++j) c[j] += z[idx * p + j];
    }
    for (std::size_t j = 0; j < p; ++j) c[j] /= static_cast<double>(members.size());
    return c;
}

// Index in `alive` of the record farthest from `point`; ties resolve to
// the smallest record index.
std::size_t farthest_from(const std::vector<double>& z, std::size_t p,
                          const std::vector<std::size_t>& alive,
                          const std::vector<double>& point) {
    std::size_t best = 0;
    double best_dist = -1.0;
    for (std::size_t pos = 0; pos < alive.size(); ++pos) {
        const double d = sq_dist_to_point(z, p, alive[pos], point);
        if (d > best_dist) {
            best_dist = d;
            best = pos;
        }
    }
    return best;
}

// Pops `anchor` plus its k-1 nearest records out of `alive` and returns
// them as a group. Ties resolve by record index for determinism.
std::vector<std::size_t> take_group(const std::vector<double>& z, std::size_t p,
                                    std::vector<std::size_t>& alive, std::size_t anchor_pos,
                                    std::size_t k) {
    const std::size_t anchor = alive[anchor_pos];
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(anchor_pos));

    std::vector<std::pair<double, std::size_t>> by_dist;
    by_dist.reserve(alive.size());
    for (std::size_t idx : alive) {
        by_dist.emplace_back(sq_dist(z, p, idx, anchor), idx);
    }
    std::sort(by_dist.begin(), by_dist.end());

    std::vector<std::size_t> group{anchor};
    for (std::size_t m = 0; m + 1 < k; ++m) {
        group.push_back(by_dist[m].second);
    }
    std::vector<std::size_t> remaining;
    remaining.reserve(alive.size() - (k - 1));
    for (std::size_t m = k - 1; m < by_dist.size(); ++m) remaining.push_back(by_dist[m].second);
    std::sort(remaining.begin(), remaining.end());
    alive = std::move(remaining);
    return group;
}

}  // namespace

NumericMatrix mdav(const NumericMatrix& data, std::int64_t k) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw_error(ErrorKind::InvalidInput,
                    "mdav group size k = " + std::to_string(k) + " must be in [1, " +
                        std::to_string(n) + "]");
    }
    const std::size_t group_size = static_cast<std::size_t>(k);

    const std::vector<double> z = standardize(data);
    std::vector<std::size_t> alive(n);
    std::iota(alive.begin(), alive.end(), std::size_t{0});

    std::vector<std::vector<std::size_t>> groups;
    while (alive.size() >= 2 * group_size) {
        const std::vector<double> center = centroid_of(z, p, alive);
        const std::size_t r_pos = farthest_from(z, p, alive, center);
        std::vector<double> r_point(p);
        for (std::size_t j = 0; j < p; ++j) r_point[j] = z[alive[r_pos] * p + j];
        groups.push_back(take_group(z, p, alive, r_pos, group_size));

        const std::size_t s_pos = farthest_from(z, p, alive, r_point);
        groups.push_back(take_group(z, p, alive, s_pos, group_size));
    }

    if (alive.size() >= group_size) {
        groups.push_back(alive);
    } else if (!alive.empty()) {
        // Leftover smaller than k: merge it into the group whose centroid
        // is nearest to the leftover's centroid.
        const std::vector<double> leftover_center = centroid_of(z, p, alive);
        std::size_t best_group = 0;
        double best_dist = -1.0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const std::vector<double> gc = centroid_of(z, p, groups[g]);
            double d = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                const double diff = leftover_center[j] - gc[j];
                d += diff * diff;
            }
            if (best_dist < 0.0 || d < best_dist) {
                best_dist = d;
                best_group = g;
            }
        }
        groups[best_group].insert(groups[best_group].end(), alive.begin(), alive.end());
    }

    std::vector<double> masked(n * p);
    for (auto& group : groups) {
        std::sort(group.begin(), group.end());
        for (std::size_t j = 0; j < p; ++j) {
            double mean = 0.0;
            for (std::size_t idx : group) mean += data(idx, j);
            mean /= static_cast<double>(group.size());
            for (std::size_t idx : group) masked[idx * p + j] = mean;
        }
    }
    return NumericMatrix(n, p, std::move(masked),
                         data.has_column_names() ? data.column_names()
                                                 : std::vector<std::string>{});
}

namespace {

// Sample covariance (n-1 denominator), p x p row-major.
std::vector<double> sample_covariance(const NumericMatrix& data) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    if (n < 2) {
        throw_error(ErrorKind::DegenerateColumn,
                    "covariance requires at least two records");
    }
    std::vector<double> means(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < n; ++i) means[j] += data(i, j);
        means[j] /= static_cast<double>(n);
    }
    std::vector<double> cov(p * p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < p; ++a) {
            const double da = data(i, a) - means[a];
            for (std::size_t b = a; b < p; ++b) {
                cov[a * p + b] += da * (data(i, b) - means[b]);
            }
        }
    }
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a; b < p; ++b) {
            cov[a * p + b] /= static_cast<double>(n - 1);
            cov[b * p + a] = cov[a * p + b];
        }
    }
    return cov;
}

// In-place lower Cholesky factor; false when a pivot is not safely
// positive (rank-deficient covariance).
bool cholesky_lower(std::vector<double>& a, std::size_t p) {
    double max_diag = 0.0;
    for (std::size_t j = 0; j < p; ++j) max_diag = std::max(max_diag, a[j * p + j]);
    const double tol = max_diag * 1e-12;

    for (std::size_t j = 0; j < p; ++j) {
        double diag = a[j * p + j];
        for (std::size_t m = 0; m < j; ++m) diag -= a[j * p + m] * a[j * p + m];
        if (!(diag > tol)) return false;
        const double root = std::sqrt(diag);
        a[j * p + j] = root;
        for (std::size_t i = j + 1; i < p; ++i) {
            double v = a[i * p + j];
            for (std::size_t m = 0; m < j; ++m) v -= a[i * p + m] * a[j * p + m];
            a[i * p + j] = v / root;
        }
        for (std::size_t m = j + 1; m < p; ++m) a[j * p + m] = 0.0;
    }
    return true;
}

}  // namespace

NumericMatrix add_noise(const NumericMatrix& data, double pct, bool correlated,
                        std::uint64_t seed) {
    if (!(pct >= 0.0) || !std::isfinite(pct)) {
        throw_error(ErrorKind::InvalidInput, "noise percentage must be a finite value >= 0");
    }
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    std::vector<double> out(data.values().begin(), data.values().end());
    if (pct == 0.0) {
        return NumericMatrix(n, p, std::move(out),
                             data.has_column_names() ? data.column_names()
                                                     : std::vector<std::string>{});
    }
    const double scale = std::sqrt(pct / 100.0);

    if (!correlated) {
        for (std::size_t j = 0; j < p; ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i) mean += data(i, j);
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = data(i, j) - mean;
                var += d * d;
            }
            const double sd = n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) : 0.0;
            const double noise_sd = scale * sd;
            Rng rng(derive_seed(seed, j));
            for (std::size_t i = 0; i < n; ++i) {
                out[i * p + j] += noise_sd * rng.next_gaussian();
            }
        }
    } else {
        std::vector<double> factor = sample_covariance(data);
        if (!cholesky_lower(factor, p)) {
            throw_error(ErrorKind::DegenerateColumn,
                        "sample covariance is rank deficient; correlated noise undefined");
        }
        Rng rng(derive_seed(seed, 0));
        std::vector<double> draw(p);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < p; ++j) draw[j] = rng.next_gaussian();
            for (std::size_t a = 0; a < p; ++a) {
                double eps = 0.0;
                for (std::size_t b = 0; b <= a; ++b) eps += factor[a * p + b] * draw[b];
                out[i * p + a] += scale * eps;
            }
        }
    }
    return NumericMatrix(n, p, std::move(out),
                         data.has_column_names() ? data.column_names()
                                                 : std::vector<std::string>{});
}

NumericMatrix rank_swap(const NumericMatrix& data, double p_fraction, std::uint64_t seed) {
    if (!(p_fraction >= 0.0 && p_fraction <= 1.0)) {
        throw_error(ErrorKind::InvalidInput, "swap fraction must lie in [0, 1]");
    }
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    const std::size_t window =
        static_cast<std::size_t>(std::floor(p_fraction * static_cast<double>(n)));

    std::vector<double> out(data.values().begin(), data.values().end());
    for (std::size_t j = 0; j < p; ++j) {
        const std::vector<double> col = data.column(j);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });

        Rng rng(derive_seed(seed, j));
        std::vector<bool> swapped(n, false);
        std::vector<std::size_t> candidates;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (swapped[pos]) continue;
            const std::size_t hi = std::min(pos + window, n - 1);
            candidates.clear();
            for (std::size_t q = pos + 1; q <= hi; ++q) {
                if (!swapped[q]) candidates.push_back(q);
            }
            if (candidates.empty()) continue;
            const std::size_t partner = candidates[rng.below(candidates.size())];
            std::swap(out[order[pos] * p + j], out[order[partner] * p + j]);
            swapped[pos] = true;
            swapped[partner] = true;
        }
    }
    return NumericMatrix(n, p, std::move(out),
                         data.has_column_names() ? data.column_names()
                                                 : std::vector<std::string>{});
}

NumericMatrix apply_perturbation(const NumericMatrix& data, const PerturbationSpec& spec) {
    switch (spec.method) {
        case PerturbMethod::Mdav: {
            const double rounded = std::nearbyint(spec.parameter);
            if (!(std::fabs(spec.parameter - rounded) < 1e-9)) {
                throw_error(ErrorKind::InvalidInput, "mdav parameter must be an integer");
            }
            return mdav(data, static_cast<std::int64_t>(rounded));
        }
        case PerturbMethod::NoiseIndependent:
            return add_noise(data, spec.parameter, false, spec.seed);
        case PerturbMethod::NoiseCorrelated:
            return add_noise(data, spec.parameter, true, spec.seed);
        case PerturbMethod::RankSwap:
            return rank_swap(data, spec.parameter, spec.seed);
    }
    throw_error(ErrorKind::InvalidInput, "unknown perturbation method");
}

}  // namespace sdcrank
