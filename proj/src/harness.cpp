#include "sdcrank/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "sdcrank/rng.hpp"
#include "sdcrank/stats.hpp"

namespace sdcrank {

double metric_value(const MetricReport& report, std::string_view name) {
    if (name == "mae") return report.mae;
    if (name == "mse") return report.mse;
    if (name == "il1") return report.il1;
    if (name == "il1s") return report.il1s;
    if (name == "rmae") return report.rmae;
    if (name == "rmse") return report.rmse;
    if (name == "brmae") return report.brmae;
    if (name == "brmse") return report.brmse;
    throw_error(ErrorKind::InvalidInput, "unknown metric '" + std::string(name) + "'");
}

GridSpec make_grid(PerturbMethod method, std::vector<double> values) {
    if (values.empty()) {
        throw_error(ErrorKind::InvalidInput, "parameter grid must be non-empty");
    }
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (!(values[i] < values[i + 1])) {
            throw_error(ErrorKind::InvalidInput, "grid values must be strictly increasing");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw_error(ErrorKind::InvalidInput, "grid values must be finite");
        }
        switch (method) {
            case PerturbMethod::Mdav:
                if (v < 1.0 || std::fabs(v - std::nearbyint(v)) > 1e-9) {
                    throw_error(ErrorKind::InvalidInput,
                                "mdav grid values must be integers >= 1");
                }
                break;
            case PerturbMethod::NoiseIndependent:
            case PerturbMethod::NoiseCorrelated:
                if (v < 0.0) {
                    throw_error(ErrorKind::InvalidInput, "noise grid values must be >= 0");
                }
                break;
            case PerturbMethod::RankSwap:
                if (v < 0.0 || v > 1.0) {
                    throw_error(ErrorKind::InvalidInput,
                                "rank-swap grid values must lie in [0, 1]");
                }
                break;
        }
    }
    return GridSpec{method, std::move(values)};
}

GridSpec default_grid(PerturbMethod method) {
    std::vector<double> values;
    switch (method) {
        case PerturbMethod::Mdav:
            for (int k = 1; k <= 30; ++k) values.push_back(static_cast<double>(k));
            break;
        case PerturbMethod::NoiseIndependent:
        case PerturbMethod::NoiseCorrelated:
            for (int pct = 1; pct <= 300; ++pct) values.push_back(static_cast<double>(pct));
            break;
        case PerturbMethod::RankSwap:
            for (int i = 1; i <= 300; ++i) values.push_back(static_cast<double>(i) / 1000.0);
            break;
    }
    return GridSpec{method, std::move(values)};
}

std::vector<double> metric_series(const ExperimentResult& result, std::string_view name) {
    std::vector<double> series;
    series.reserve(result.reports.size());
    for (const auto& report : result.reports) series.push_back(metric_value(report, name));
    return series;
}

namespace {

// Runs fn(0..count-1) on up to `jobs` worker threads. The work per index
// is independent; the first exception wins and is rethrown after join.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto body = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::optional<double> spearman_or_marker(std::span<const double> a, std::span<const double> b) {
    try {
        return spearman(a, b);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegenerateInput) return std::nullopt;
        throw;
    }
}

std::string format_grid_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

ExperimentResult run_grid(const NumericMatrix& data, const GridSpec& grid, std::uint64_t seed,
                          const TieBreakPolicy& policy, int jobs) {
    make_grid(grid.method, grid.values);  // revalidate
    if (data.rows() < 2) {
        throw_error(ErrorKind::DegenerateInput,
                    "grid experiments require at least two records");
    }

    ExperimentResult result;
    result.method = grid.method;
    result.grid = grid.values;
    result.reports.resize(grid.values.size());

    parallel_for(grid.values.size(), jobs, [&](std::size_t gi) {
        const PerturbationSpec spec{grid.method, grid.values[gi], derive_seed(seed, gi)};
        try {
            const NumericMatrix masked = apply_perturbation(data, spec);
            result.reports[gi] = full_report(data, masked, policy);
        } catch (const Error& e) {
            throw Error(e.kind(), "grid value " + format_grid_value(grid.values[gi]) + ": " +
                                      e.what());
        }
    });

    for (std::string_view name : kHeadlineMetrics) {
        // A single grid point cannot carry a correlation; mark it
        // undefined like a constant series.
        std::optional<double> rho;
        if (result.grid.size() >= 2) {
            rho = spearman_or_marker(metric_series(result, name), result.grid);
        }
        result.spearman_vs_grid.emplace_back(std::string(name), rho);
    }
    return result;
}

std::vector<CrossCorrelation> cross_metric_correlations(const ExperimentResult& result) {
    if (result.reports.size() < 2) {
        throw_error(ErrorKind::InvalidInput,
                    "cross-metric correlations require at least two grid points");
    }
    static constexpr std::array<std::string_view, 2> bounded = {"brmae", "brmse"};
    static constexpr std::array<std::string_view, 4> unbounded = {"mae", "mse", "il1", "il1s"};

    std::vector<CrossCorrelation> table;
    for (std::string_view bm : bounded) {
        const std::vector<double> bseries = metric_series(result, bm);
        for (std::string_view um : unbounded) {
            const std::vector<double> useries = metric_series(result, um);
            table.push_back(CrossCorrelation{std::string(bm), std::string(um),
                                             spearman_or_marker(bseries, useries)});
        }
    }
    return table;
}

ReplicationSummary replicate(const NumericMatrix& data, const GridSpec& grid,
                             std::size_t replication_count, std::uint64_t base_seed,
                             const TieBreakPolicy& policy, int jobs) {
    if (grid.method == PerturbMethod::Mdav) {
        throw_error(ErrorKind::InvalidInput,
                    "mdav is deterministic; replication rejected");
    }
    if (replication_count < 1) {
        throw_error(ErrorKind::InvalidInput, "replication count must be at least 1");
    }

    ReplicationSummary summary;
    summary.replication_count = replication_count;
    summary.per_replication.reserve(replication_count);
    for (std::size_t r = 0; r < replication_count; ++r) {
        summary.per_replication.push_back(
            run_grid(data, grid, derive_seed(base_seed, r), policy, jobs));
    }

    for (std::string_view name : kHeadlineMetrics) {
        std::vector<std::optional<double>> values;
        values.reserve(replication_count);
        for (const auto& rep : summary.per_replication) {
            for (const auto& [metric, rho] : rep.spearman_vs_grid) {
                if (metric == name) values.push_back(rho);
            }
        }
        summary.correlation_distributions.emplace_back(std::string(name), std::move(values));
    }
    return summary;
}

}  // namespace sdcrank
