#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdcrank/matrix.hpp"
#include "sdcrank/metrics.hpp"
#include "sdcrank/perturb.hpp"

namespace sdcrank {

// All metrics carried by a MetricReport, in serialization order.
inline constexpr std::array<std::string_view, 8> kAllMetrics = {
    "mae", "mse", "il1", "il1s", "rmae", "rmse", "brmae", "brmse"};

// The six metrics analyzed against perturbation grids.
inline constexpr std::array<std::string_view, 6> kHeadlineMetrics = {
    "brmae", "brmse", "mae", "mse", "il1", "il1s"};

double metric_value(const MetricReport& report, std::string_view name);

// An ordered sweep of parameter values for one perturbation method.
struct GridSpec {
    PerturbMethod method;
    std::vector<double> values;
};

// Validates monotonicity and per-method parameter ranges.
GridSpec make_grid(PerturbMethod method, std::vector<double> values);

// The parameter grids used by default: mdav k = 1..30, noise percentage
// 1..300, rank-swap fraction 0.001..0.3 in steps of 0.001.
GridSpec default_grid(PerturbMethod method);

// Spearman correlation between one bounded metric's series and one
// unbounded metric's series across grid points; empty when either series
// is constant (undefined, reported as a marker rather than an error).
struct CrossCorrelation {
    std::string bounded_metric;
    std::string unbounded_metric;
    std::optional<double> spearman;
};

struct ExperimentResult {
    PerturbMethod method;
    std::vector<double> grid;
    std::vector<MetricReport> reports;  // one per grid value, grid order
    // Headline metric name -> Spearman against the grid (nullopt when the
    // series is constant).
    std::vector<std::pair<std::string, std::optional<double>>> spearman_vs_grid;
    std::vector<CrossCorrelation> cross;  // filled by cross_metric_correlations
};

std::vector<double> metric_series(const ExperimentResult& result, std::string_view name);

struct ReplicationSummary {
    std::size_t replication_count = 0;
    std::vector<ExperimentResult> per_replication;
    // Headline metric name -> one Spearman-vs-grid value per replication.
    std::vector<std::pair<std::string, std::vector<std::optional<double>>>>
        correlation_distributions;
};

// Masks the data once per grid value (per-point sub-seed derived from the
// grid index), evaluates the full metric report each time, and correlates
// every headline metric series against the grid. `jobs` workers may
// evaluate grid points concurrently; results are identical for any count.
ExperimentResult run_grid(const NumericMatrix& data, const GridSpec& grid, std::uint64_t seed,
                          const TieBreakPolicy& policy, int jobs = 1);

// Spearman between the bounded metric series (brmae, brmse) and each
// unbounded series (mae, mse, il1, il1s) across grid points.
std::vector<CrossCorrelation> cross_metric_correlations(const ExperimentResult& result);

// Repeats run_grid with per-replication sub-seeds and collects the
// per-metric correlation distributions. Rejected for mdav, which is
// deterministic and cannot vary across replications.
ReplicationSummary replicate(const NumericMatrix& data, const GridSpec& grid,
                             std::size_t replication_count, std::uint64_t base_seed,
                             const TieBreakPolicy& policy, int jobs = 1);

}  // namespace sdcrank
