// Python bindings for the sdcrank core: ranking, rank distances,
// information-loss metrics, masking methods, and the experiment harness.

#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdcrank/harness.hpp"
#include "sdcrank/io.hpp"
#include "sdcrank/metrics.hpp"
#include "sdcrank/perturb.hpp"
#include "sdcrank/rank_distance.hpp"
#include "sdcrank/ranking.hpp"
#include "sdcrank/stats.hpp"

namespace py = pybind11;
using namespace sdcrank;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Int64Array = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

NumericMatrix to_matrix(const DoubleArray& arr) {
    if (arr.ndim() != 2) {
        throw_error(ErrorKind::InvalidInput, "expected a 2-dimensional array");
    }
    const auto n = static_cast<std::size_t>(arr.shape(0));
    const auto p = static_cast<std::size_t>(arr.shape(1));
    std::vector<double> values(arr.data(), arr.data() + n * p);
    return NumericMatrix(n, p, std::move(values));
}

py::array_t<double> from_matrix(const NumericMatrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    std::copy(m.values().begin(), m.values().end(), out.mutable_data());
    return out;
}

RankMatrix to_rank_matrix(const Int64Array& arr) {
    if (arr.ndim() != 2) {
        throw_error(ErrorKind::InvalidInput, "expected a 2-dimensional array");
    }
    const auto n = static_cast<std::size_t>(arr.shape(0));
    const auto p = static_cast<std::size_t>(arr.shape(1));
    std::vector<std::int64_t> ranks(arr.data(), arr.data() + n * p);
    return RankMatrix(n, p, std::move(ranks));
}

py::array_t<std::int64_t> from_rank_matrix(const RankMatrix& m) {
    py::array_t<std::int64_t> out({m.rows(), m.cols()});
    std::copy(m.values().begin(), m.values().end(), out.mutable_data());
    return out;
}

std::vector<std::int64_t> to_rank_vector(const Int64Array& arr) {
    if (arr.ndim() != 1) {
        throw_error(ErrorKind::InvalidInput, "expected a 1-dimensional array");
    }
    return std::vector<std::int64_t>(arr.data(), arr.data() + arr.shape(0));
}

std::vector<double> to_double_vector(const DoubleArray& arr) {
    if (arr.ndim() != 1) {
        throw_error(ErrorKind::InvalidInput, "expected a 1-dimensional array");
    }
    return std::vector<double>(arr.data(), arr.data() + arr.shape(0));
}

TieBreakPolicy make_policy(const std::string& mode, std::uint64_t seed) {
    if (mode == "first") return TieBreakPolicy::first_occurrence();
    if (mode == "random") return TieBreakPolicy::seeded_random(seed);
    throw_error(ErrorKind::InvalidInput,
                "unknown tie-break mode '" + mode + "' (expected first or random)");
}

py::dict report_to_dict(const MetricReport& report) {
    py::dict d;
    for (std::string_view name : kAllMetrics) {
        d[py::str(std::string(name))] = metric_value(report, name);
    }
    d["il1_skipped_cells"] = report.il1_skipped_cells;
    return d;
}

py::dict records_to_dict(const std::vector<PermutationDistanceRecord>& records) {
    const std::size_t m = records.size();
    const std::size_t n = records.empty() ? 0 : records.front().permutation.size();
    py::array_t<std::int64_t> perms({m, n});
    py::array_t<std::int64_t> abs_d(m);
    py::array_t<std::int64_t> sq_d(m);
    py::array_t<double> babs(m);
    py::array_t<double> bsq(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            perms.mutable_data()[i * n + j] = records[i].permutation[j];
        }
        abs_d.mutable_data()[i] = records[i].abs_distance;
        sq_d.mutable_data()[i] = records[i].sq_distance;
        babs.mutable_data()[i] = records[i].bounded_abs;
        bsq.mutable_data()[i] = records[i].bounded_sq;
    }
    py::dict d;
    d["permutations"] = perms;
    d["abs_distance"] = abs_d;
    d["sq_distance"] = sq_d;
    d["bounded_abs"] = babs;
    d["bounded_sq"] = bsq;
    return d;
}

GridSpec resolve_grid(PerturbMethod method, const std::optional<std::vector<double>>& grid) {
    if (!grid) return default_grid(method);
    return make_grid(method, *grid);
}

py::dict result_to_dict(const ExperimentResult& result) {
    py::dict d;
    d["method"] = std::string(to_string(result.method));
    d["grid"] = result.grid;
    py::dict metrics;
    for (std::string_view name : kAllMetrics) {
        metrics[py::str(std::string(name))] = metric_series(result, name);
    }
    d["metrics"] = metrics;
    std::vector<std::size_t> skipped;
    for (const auto& r : result.reports) skipped.push_back(r.il1_skipped_cells);
    d["il1_skipped_cells"] = skipped;
    py::dict vs_grid;
    for (const auto& [name, rho] : result.spearman_vs_grid) {
        vs_grid[py::str(name)] = rho ? py::cast(*rho) : py::none();
    }
    d["spearman_vs_grid"] = vs_grid;
    py::list cross;
    for (const auto& c : result.cross) {
        py::dict entry;
        entry["bounded"] = c.bounded_metric;
        entry["unbounded"] = c.unbounded_metric;
        entry["spearman"] = c.spearman ? py::cast(*c.spearman) : py::none();
        cross.append(entry);
    }
    d["cross_metric_spearman"] = cross;
    return d;
}

}  // namespace

PYBIND11_MODULE(_sdcrank, m) {
    m.doc() = "Bounded rank-based information-loss metrics and masking methods "
              "for numeric microdata";

    py::register_exception<Error>(m, "Error");

    m.def(
        "rank_column",
        [](const DoubleArray& values, const std::string& tie_break, std::uint64_t seed) {
            const auto v = to_double_vector(values);
            const auto ranks = rank_column(v, make_policy(tie_break, seed));
            py::array_t<std::int64_t> out(ranks.size());
            std::copy(ranks.begin(), ranks.end(), out.mutable_data());
            return out;
        },
        py::arg("values"), py::arg("tie_break") = "first", py::arg("seed") = 0,
        "Ranks of a numeric column; always a permutation of 1..n.");

    m.def(
        "rank_matrix",
        [](const DoubleArray& data, const std::string& tie_break, std::uint64_t seed) {
            return from_rank_matrix(rank_matrix(to_matrix(data), make_policy(tie_break, seed)));
        },
        py::arg("data"), py::arg("tie_break") = "first", py::arg("seed") = 0,
        "Column-wise ranks of a matrix.");

    m.def(
        "abs_rank_distance",
        [](const Int64Array& r1, const Int64Array& r2) {
            return abs_rank_distance(to_rank_vector(r1), to_rank_vector(r2));
        },
        py::arg("r1"), py::arg("r2"));
    m.def(
        "sq_rank_distance",
        [](const Int64Array& r1, const Int64Array& r2) {
            return sq_rank_distance(to_rank_vector(r1), to_rank_vector(r2));
        },
        py::arg("r1"), py::arg("r2"));
    m.def(
        "bounded_abs_rank_distance",
        [](const Int64Array& r1, const Int64Array& r2) {
            return bounded_abs_rank_distance(to_rank_vector(r1), to_rank_vector(r2));
        },
        py::arg("r1"), py::arg("r2"));
    m.def(
        "bounded_sq_rank_distance",
        [](const Int64Array& r1, const Int64Array& r2) {
            return bounded_sq_rank_distance(to_rank_vector(r1), to_rank_vector(r2));
        },
        py::arg("r1"), py::arg("r2"));

    m.def(
        "bounds_for",
        [](std::int64_t n) {
            const RankDistanceBounds b = bounds_for(n);
            py::dict d;
            d["n"] = b.n;
            d["k"] = b.k;
            d["max_abs"] = b.max_abs;
            d["max_sq"] = b.max_sq;
            return d;
        },
        py::arg("n"), "Maximal absolute and squared rank distances for length n.");
    m.def("max_safe_n", &max_safe_n);

    m.def(
        "mae",
        [](const DoubleArray& a, const DoubleArray& b) { return mae(to_matrix(a), to_matrix(b)); },
        py::arg("original"), py::arg("masked"));
    m.def(
        "mse",
        [](const DoubleArray& a, const DoubleArray& b) { return mse(to_matrix(a), to_matrix(b)); },
        py::arg("original"), py::arg("masked"));
    m.def(
        "il1",
        [](const DoubleArray& a, const DoubleArray& b) {
            const Il1Result r = il1(to_matrix(a), to_matrix(b));
            return py::make_tuple(r.value, r.skipped_cells);
        },
        py::arg("original"), py::arg("masked"),
        "Mean relative absolute deviation and the skipped-cell count.");
    m.def(
        "il1s",
        [](const DoubleArray& a, const DoubleArray& b) {
            return il1s(to_matrix(a), to_matrix(b));
        },
        py::arg("original"), py::arg("masked"));
    m.def(
        "rmae",
        [](const Int64Array& a, const Int64Array& b) {
            return rmae(to_rank_matrix(a), to_rank_matrix(b));
        },
        py::arg("original_ranks"), py::arg("masked_ranks"));
    m.def(
        "rmse",
        [](const Int64Array& a, const Int64Array& b) {
            return rmse(to_rank_matrix(a), to_rank_matrix(b));
        },
        py::arg("original_ranks"), py::arg("masked_ranks"));
    m.def(
        "brmae",
        [](const Int64Array& a, const Int64Array& b) {
            return brmae(to_rank_matrix(a), to_rank_matrix(b));
        },
        py::arg("original_ranks"), py::arg("masked_ranks"));
    m.def(
        "brmse",
        [](const Int64Array& a, const Int64Array& b) {
            return brmse(to_rank_matrix(a), to_rank_matrix(b));
        },
        py::arg("original_ranks"), py::arg("masked_ranks"));

    m.def(
        "full_report",
        [](const DoubleArray& original, const DoubleArray& masked, const std::string& tie_break,
           std::uint64_t seed) {
            return report_to_dict(
                full_report(to_matrix(original), to_matrix(masked), make_policy(tie_break, seed)));
        },
        py::arg("original"), py::arg("masked"), py::arg("tie_break") = "first",
        py::arg("seed") = 0, "All eight metrics plus the il1 skipped-cell count.");

    m.def(
        "mdav",
        [](const DoubleArray& data, std::int64_t k) { return from_matrix(mdav(to_matrix(data), k)); },
        py::arg("data"), py::arg("k"),
        "Microaggregation: replace each record by its size-k group's column means.");
    m.def(
        "add_noise",
        [](const DoubleArray& data, double pct, bool correlated, std::uint64_t seed) {
            return from_matrix(add_noise(to_matrix(data), pct, correlated, seed));
        },
        py::arg("data"), py::arg("pct"), py::arg("correlated") = false, py::arg("seed") = 0,
        "Additive Gaussian noise scaled to pct percent of the column variances "
        "(or the covariance matrix in correlated mode).");
    m.def(
        "rank_swap",
        [](const DoubleArray& data, double p_fraction, std::uint64_t seed) {
            return from_matrix(rank_swap(to_matrix(data), p_fraction, seed));
        },
        py::arg("data"), py::arg("p_fraction"), py::arg("seed") = 0,
        "Swap column values between records at most floor(p_fraction*n) ranks apart.");

    m.def(
        "spearman",
        [](const DoubleArray& a, const DoubleArray& b) {
            return spearman(to_double_vector(a), to_double_vector(b));
        },
        py::arg("a"), py::arg("b"), "Spearman rank correlation (midranks for ties).");

    m.def(
        "enumerate_permutation_distances",
        [](std::int64_t n) { return records_to_dict(enumerate_permutation_distances(n)); },
        py::arg("n"), "Distances to the identity for all n! permutations (n <= 8).");
    m.def(
        "sample_permutation_distances",
        [](std::int64_t n, std::size_t count, std::uint64_t seed) {
            return records_to_dict(sample_permutation_distances(n, count, seed));
        },
        py::arg("n"), py::arg("count"), py::arg("seed") = 0,
        "Random permutations plus the identity and full reversal.");

    m.def(
        "default_grid",
        [](const std::string& method) { return default_grid(parse_method(method)).values; },
        py::arg("method"));

    m.def(
        "run_grid",
        [](const DoubleArray& data, const std::string& method, std::uint64_t seed,
           const std::optional<std::vector<double>>& grid, const std::string& tie_break,
           std::uint64_t tie_seed, int jobs) {
            const PerturbMethod m_ = parse_method(method);
            const GridSpec spec = resolve_grid(m_, grid);
            ExperimentResult result =
                run_grid(to_matrix(data), spec, seed, make_policy(tie_break, tie_seed), jobs);
            if (result.reports.size() >= 2) result.cross = cross_metric_correlations(result);
            return result_to_dict(result);
        },
        py::arg("data"), py::arg("method"), py::arg("seed"), py::arg("grid") = py::none(),
        py::arg("tie_break") = "first", py::arg("tie_seed") = 0, py::arg("jobs") = 1,
        "Mask once per grid value and correlate every metric with the grid.");

    m.def(
        "replicate",
        [](const DoubleArray& data, const std::string& method, std::size_t count,
           std::uint64_t seed, const std::optional<std::vector<double>>& grid,
           const std::string& tie_break, std::uint64_t tie_seed, int jobs) {
            const PerturbMethod m_ = parse_method(method);
            const GridSpec spec = resolve_grid(m_, grid);
            const ReplicationSummary summary =
                replicate(to_matrix(data), spec, count, seed, make_policy(tie_break, tie_seed),
                          jobs);
            py::dict d;
            d["replication_count"] = summary.replication_count;
            py::dict dists;
            for (const auto& [name, values] : summary.correlation_distributions) {
                py::list vals;
                for (const auto& v : values) vals.append(v ? py::cast(*v) : py::none());
                dists[py::str(name)] = vals;
            }
            d["correlation_distributions"] = dists;
            return d;
        },
        py::arg("data"), py::arg("method"), py::arg("count"), py::arg("seed"),
        py::arg("grid") = py::none(), py::arg("tie_break") = "first", py::arg("tie_seed") = 0,
        py::arg("jobs") = 1,
        "Repeat a grid sweep and collect the per-metric correlation distributions.");

    m.attr("__version__") = "0.1.0";
}
