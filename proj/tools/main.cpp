// sdcrank command line tool: ranking, information-loss metrics, masking
// methods, grid experiments, replications, and the permutation oracle.
//
// Machine-readable CSV goes to stdout or --out; human-readable notes go
// to stderr. Exit codes: 0 success, 1 runtime/data error, 2 usage error.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdcrank/harness.hpp"
#include "sdcrank/io.hpp"
#include "sdcrank/metrics.hpp"
#include "sdcrank/perturb.hpp"
#include "sdcrank/ranking.hpp"
#include "sdcrank/stats.hpp"

namespace {

using namespace sdcrank;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput:
        case ErrorKind::DegenerateInput:
        case ErrorKind::Overflow:
            return 2;
        case ErrorKind::DegenerateColumn:
        case ErrorKind::IoError:
        case ErrorKind::ParseError:
            return 1;
    }
    return 1;
}

struct InputFlags {
    std::string columns;
    bool no_header = false;

    DatasetSource source(const std::string& path) const {
        DatasetSource src;
        src.path = path;
        src.header = !no_header;
        if (!columns.empty()) {
            std::vector<std::string> tokens;
            std::stringstream ss(columns);
            std::string token;
            while (std::getline(ss, token, ',')) tokens.push_back(token);
            src.selected_columns = std::move(tokens);
        }
        return src;
    }
};

struct TieBreakFlags {
    std::string mode = "first";
    std::uint64_t seed = 0;
    bool seed_given = false;

    TieBreakPolicy policy() const {
        if (mode == "first") return TieBreakPolicy::first_occurrence();
        if (mode == "random") {
            if (!seed_given) {
                throw_error(ErrorKind::InvalidInput,
                            "--tie-break random requires an explicit --seed");
            }
            return TieBreakPolicy::seeded_random(seed);
        }
        throw_error(ErrorKind::InvalidInput,
                    "unknown tie-break mode '" + mode + "' (expected first or random)");
    }
};

void add_input_flags(CLI::App* cmd, InputFlags& flags) {
    cmd->add_option("--columns", flags.columns,
                    "Comma-separated column names or 0-based indices to use");
    cmd->add_flag("--no-header", flags.no_header, "Input CSV has no header row");
}

// Streams either to --out or stdout.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) : path_(path) {}

    void write(const std::function<void(std::ostream&)>& writer) const {
        if (path_.empty()) {
            writer(std::cout);
        } else {
            std::ofstream out(path_);
            if (!out) throw_error(ErrorKind::IoError, "cannot open '" + path_ + "' for writing");
            writer(out);
        }
    }

private:
    std::string path_;
};

std::string derive_summary_path(const std::string& out_path) {
    const std::string suffix = ".csv";
    if (out_path.size() > suffix.size() &&
        out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return out_path.substr(0, out_path.size() - suffix.size()) + "_summary.csv";
    }
    return out_path + "_summary.csv";
}

GridSpec grid_from_flags(PerturbMethod method, double from, double to, double step,
                         bool custom) {
    if (!custom) return default_grid(method);
    if (step <= 0.0 || to < from) {
        throw_error(ErrorKind::InvalidInput,
                    "custom grid requires --grid-step > 0 and --grid-to >= --grid-from");
    }
    std::vector<double> values;
    for (double v = from; v <= to + step * 1e-9; v += step) values.push_back(v);
    return make_grid(method, std::move(values));
}

std::string describe_grid(const GridSpec& grid) {
    std::ostringstream text;
    text << to_string(grid.method) << " grid with " << grid.values.size() << " values in ["
         << grid.values.front() << ", " << grid.values.back() << "]";
    return text.str();
}

int run_rank(const std::string& input, const InputFlags& in_flags, const TieBreakFlags& tie,
             const std::string& out_path) {
    const NumericMatrix data = load_csv(in_flags.source(input));
    const RankMatrix ranks = rank_matrix(data, tie.policy());
    OutputTarget(out_path).write([&](std::ostream& out) {
        write_rank_matrix_csv(ranks, data.column_names(), out);
    });
    std::cerr << "ranked " << data.rows() << "x" << data.cols() << " matrix\n";
    return 0;
}

int run_metrics(const std::string& original_path, const std::string& masked_path,
                const InputFlags& in_flags, const TieBreakFlags& tie,
                const std::string& out_path) {
    const NumericMatrix original = load_csv(in_flags.source(original_path));
    const NumericMatrix masked = load_csv(in_flags.source(masked_path));
    if (!original.same_shape(masked)) {
        throw_error(ErrorKind::InvalidInput,
                    "shape mismatch: original is " + std::to_string(original.rows()) + "x" +
                        std::to_string(original.cols()) + ", masked is " +
                        std::to_string(masked.rows()) + "x" + std::to_string(masked.cols()));
    }
    const MetricReport report = full_report(original, masked, tie.policy());
    OutputTarget(out_path).write([&](std::ostream& out) {
        out << "metric,value\n";
        for (std::string_view name : kAllMetrics) {
            out << name << ',' << format_double(metric_value(report, name)) << '\n';
        }
        out << "il1_skipped_cells," << report.il1_skipped_cells << '\n';
    });
    std::cerr << "compared " << original.rows() << "x" << original.cols() << " matrices\n";
    return 0;
}

int run_mask(const std::string& input, const InputFlags& in_flags, const std::string& method_name,
             double parameter, std::uint64_t seed, bool seed_given, const std::string& out_path) {
    const PerturbMethod method = parse_method(method_name);
    const bool stochastic = method != PerturbMethod::Mdav;
    if (stochastic && !seed_given) {
        throw_error(ErrorKind::InvalidInput,
                    "method '" + method_name + "' is stochastic; --seed is required");
    }
    const NumericMatrix data = load_csv(in_flags.source(input));
    const PerturbationSpec spec{method, parameter, seed};
    const NumericMatrix masked = apply_perturbation(data, spec);
    OutputTarget(out_path).write([&](std::ostream& out) { write_matrix_csv(masked, out); });
    std::cerr << "masked with method=" << to_string(method) << " parameter=" << parameter;
    if (stochastic) std::cerr << " seed=" << seed;
    std::cerr << '\n';
    return 0;
}

int run_grid_cmd(const std::string& input, const InputFlags& in_flags, const TieBreakFlags& tie,
                 const std::string& method_name, std::uint64_t seed, bool seed_given, int jobs,
                 double grid_from, double grid_to, double grid_step, bool custom_grid,
                 const std::string& out_path, std::string summary_path,
                 const std::string& json_path) {
    const PerturbMethod method = parse_method(method_name);
    if (method != PerturbMethod::Mdav && !seed_given) {
        throw_error(ErrorKind::InvalidInput,
                    "method '" + method_name + "' is stochastic; --seed is required");
    }
    const NumericMatrix data = load_csv(in_flags.source(input));
    const GridSpec grid = grid_from_flags(method, grid_from, grid_to, grid_step, custom_grid);

    ExperimentResult result = run_grid(data, grid, seed, tie.policy(), jobs);
    if (result.reports.size() >= 2) result.cross = cross_metric_correlations(result);

    write_experiment_csv(result, out_path);
    if (summary_path.empty()) summary_path = derive_summary_path(out_path);
    write_spearman_summary_csv(result, summary_path);
    if (!json_path.empty()) write_experiment_json(result, json_path);

    std::cerr << (custom_grid ? "custom " : "default ") << describe_grid(grid) << ", seed="
              << seed << ", jobs=" << jobs << '\n';
    std::cerr << "metrics -> " << out_path << ", summary -> " << summary_path << '\n';
    return 0;
}

int run_replicate_cmd(const std::string& input, const InputFlags& in_flags,
                      const TieBreakFlags& tie, const std::string& method_name,
                      std::uint64_t seed, bool seed_given, int jobs, std::size_t count,
                      double grid_from, double grid_to, double grid_step, bool custom_grid,
                      const std::string& out_path, std::string summary_path) {
    const PerturbMethod method = parse_method(method_name);
    if (method != PerturbMethod::Mdav && !seed_given) {
        throw_error(ErrorKind::InvalidInput,
                    "method '" + method_name + "' is stochastic; --seed is required");
    }
    const NumericMatrix data = load_csv(in_flags.source(input));
    const GridSpec grid = grid_from_flags(method, grid_from, grid_to, grid_step, custom_grid);

    const ReplicationSummary summary = replicate(data, grid, count, seed, tie.policy(), jobs);
    write_replication_csv(summary, out_path);
    if (summary_path.empty()) summary_path = derive_summary_path(out_path);
    write_replication_summary_csv(summary, summary_path);

    std::cerr << count << " replications of " << (custom_grid ? "custom " : "default ")
              << describe_grid(grid) << ", seed=" << seed << ", jobs=" << jobs << '\n';
    std::cerr << "metrics -> " << out_path << ", summary -> " << summary_path << '\n';
    return 0;
}

int run_oracle(std::int64_t n, std::optional<std::size_t> sample_count, std::uint64_t seed,
               bool seed_given, const std::string& out_path) {
    std::vector<PermutationDistanceRecord> records;
    if (sample_count) {
        if (!seed_given) {
            throw_error(ErrorKind::InvalidInput, "sampling mode requires --seed");
        }
        records = sample_permutation_distances(n, *sample_count, seed);
    } else {
        if (n > 8) {
            throw_error(ErrorKind::InvalidInput,
                        "full enumeration is capped at n = 8; pass --sample for larger n");
        }
        records = enumerate_permutation_distances(n);
    }
    OutputTarget(out_path).write([&](std::ostream& out) { write_permutation_csv(records, out); });
    std::cerr << records.size() << " permutation records for n = " << n << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded rank-based information-loss metrics and masking methods "
                 "for numeric microdata"};
    app.require_subcommand(1);

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "Rank a numeric CSV column-wise");
    std::string rank_input, rank_out;
    InputFlags rank_in_flags;
    TieBreakFlags rank_tie;
    rank_cmd->add_option("input", rank_input, "Input CSV")->required();
    add_input_flags(rank_cmd, rank_in_flags);
    rank_cmd->add_option("--tie-break", rank_tie.mode, "Tie-break mode: first or random");
    auto* rank_seed_opt = rank_cmd->add_option("--seed", rank_tie.seed, "Tie-break seed");
    rank_cmd->add_option("--out", rank_out, "Output CSV path (default stdout)");

    // metrics
    auto* metrics_cmd =
        app.add_subcommand("metrics", "Information-loss metrics for an original/masked pair");
    std::string metrics_original, metrics_masked, metrics_out;
    InputFlags metrics_in_flags;
    TieBreakFlags metrics_tie;
    metrics_cmd->add_option("original", metrics_original, "Original CSV")->required();
    metrics_cmd->add_option("masked", metrics_masked, "Masked CSV")->required();
    add_input_flags(metrics_cmd, metrics_in_flags);
    metrics_cmd->add_option("--tie-break", metrics_tie.mode, "Tie-break mode: first or random");
    auto* metrics_seed_opt = metrics_cmd->add_option("--seed", metrics_tie.seed, "Tie-break seed");
    metrics_cmd->add_option("--out", metrics_out, "Output CSV path (default stdout)");

    // mask
    auto* mask_cmd = app.add_subcommand("mask", "Apply one masking method to a CSV");
    std::string mask_input, mask_method, mask_out;
    InputFlags mask_in_flags;
    double mask_param = 0.0;
    std::uint64_t mask_seed = 0;
    mask_cmd->add_option("input", mask_input, "Input CSV")->required();
    add_input_flags(mask_cmd, mask_in_flags);
    mask_cmd->add_option("--method", mask_method,
                         "mdav | noise | noise-ind | noise-corr | rankswap")
        ->required();
    mask_cmd->add_option("--param", mask_param,
                         "Group size k, noise percentage, or swap fraction P")
        ->required();
    auto* mask_seed_opt = mask_cmd->add_option("--seed", mask_seed, "Seed (stochastic methods)");
    mask_cmd->add_option("--out", mask_out, "Output CSV path (default stdout)");

    // grid
    auto* grid_cmd =
        app.add_subcommand("grid", "Sweep a perturbation parameter grid and correlate metrics");
    std::string grid_input, grid_method, grid_out, grid_summary, grid_json;
    InputFlags grid_in_flags;
    TieBreakFlags grid_tie;
    std::uint64_t grid_seed = 0;
    int grid_jobs = 1;
    double grid_from = 0.0, grid_to = 0.0, grid_step = 0.0;
    grid_cmd->add_option("input", grid_input, "Input CSV")->required();
    add_input_flags(grid_cmd, grid_in_flags);
    grid_cmd->add_option("--method", grid_method,
                         "mdav | noise | noise-ind | noise-corr | rankswap")
        ->required();
    auto* grid_seed_opt = grid_cmd->add_option("--seed", grid_seed, "Experiment seed");
    grid_cmd->add_option("--tie-break", grid_tie.mode, "Tie-break mode: first or random");
    grid_cmd->add_option("--jobs", grid_jobs, "Worker threads")->check(CLI::PositiveNumber);
    auto* grid_from_opt = grid_cmd->add_option("--grid-from", grid_from, "Custom grid start");
    grid_cmd->add_option("--grid-to", grid_to, "Custom grid end")->needs(grid_from_opt);
    grid_cmd->add_option("--grid-step", grid_step, "Custom grid step")->needs(grid_from_opt);
    grid_cmd->add_option("--out", grid_out, "Metric CSV path")->required();
    grid_cmd->add_option("--summary", grid_summary,
                         "Summary CSV path (default: derived from --out)");
    grid_cmd->add_option("--json", grid_json, "Optional JSON mirror path");

    // replicate
    auto* rep_cmd = app.add_subcommand(
        "replicate", "Repeat a grid sweep with fresh sub-seeds and collect correlations");
    std::string rep_input, rep_method, rep_out, rep_summary;
    InputFlags rep_in_flags;
    TieBreakFlags rep_tie;
    std::uint64_t rep_seed = 0;
    int rep_jobs = 1;
    std::size_t rep_count = 0;
    double rep_from = 0.0, rep_to = 0.0, rep_step = 0.0;
    rep_cmd->add_option("input", rep_input, "Input CSV")->required();
    add_input_flags(rep_cmd, rep_in_flags);
    rep_cmd->add_option("--method", rep_method, "noise | noise-ind | noise-corr | rankswap")
        ->required();
    rep_cmd->add_option("--count", rep_count, "Number of replications")->required();
    auto* rep_seed_opt = rep_cmd->add_option("--seed", rep_seed, "Base seed");
    rep_cmd->add_option("--tie-break", rep_tie.mode, "Tie-break mode: first or random");
    rep_cmd->add_option("--jobs", rep_jobs, "Worker threads")->check(CLI::PositiveNumber);
    auto* rep_from_opt = rep_cmd->add_option("--grid-from", rep_from, "Custom grid start");
    rep_cmd->add_option("--grid-to", rep_to, "Custom grid end")->needs(rep_from_opt);
    rep_cmd->add_option("--grid-step", rep_step, "Custom grid step")->needs(rep_from_opt);
    rep_cmd->add_option("--out", rep_out, "Metric CSV path")->required();
    rep_cmd->add_option("--summary", rep_summary,
                        "Summary CSV path (default: derived from --out)");

    // oracle
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "Permutation distances to the identity: enumerate (n <= 8) or sample");
    std::int64_t oracle_n = 0;
    std::size_t oracle_sample = 0;
    std::uint64_t oracle_seed = 0;
    std::string oracle_out;
    oracle_cmd->add_option("--n", oracle_n, "Vector length")->required();
    auto* oracle_sample_opt =
        oracle_cmd->add_option("--sample", oracle_sample, "Sample this many random permutations");
    auto* oracle_seed_opt = oracle_cmd->add_option("--seed", oracle_seed, "Sampling seed");
    oracle_cmd->add_option("--out", oracle_out, "Output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rank_cmd->parsed()) {
            rank_tie.seed_given = rank_seed_opt->count() > 0;
            return run_rank(rank_input, rank_in_flags, rank_tie, rank_out);
        }
        if (metrics_cmd->parsed()) {
            metrics_tie.seed_given = metrics_seed_opt->count() > 0;
            return run_metrics(metrics_original, metrics_masked, metrics_in_flags, metrics_tie,
                               metrics_out);
        }
        if (mask_cmd->parsed()) {
            return run_mask(mask_input, mask_in_flags, mask_method, mask_param, mask_seed,
                            mask_seed_opt->count() > 0, mask_out);
        }
        if (grid_cmd->parsed()) {
            grid_tie.seed_given = grid_seed_opt->count() > 0;
            return run_grid_cmd(grid_input, grid_in_flags, grid_tie, grid_method, grid_seed,
                                grid_seed_opt->count() > 0, grid_jobs, grid_from, grid_to,
                                grid_step, grid_from_opt->count() > 0, grid_out, grid_summary,
                                grid_json);
        }
        if (rep_cmd->parsed()) {
            rep_tie.seed_given = rep_seed_opt->count() > 0;
            return run_replicate_cmd(rep_input, rep_in_flags, rep_tie, rep_method, rep_seed,
                                     rep_seed_opt->count() > 0, rep_jobs, rep_count, rep_from,
                                     rep_to, rep_step, rep_from_opt->count() > 0, rep_out,
                                     rep_summary);
        }
        if (oracle_cmd->parsed()) {
            std::optional<std::size_t> sample;
            if (oracle_sample_opt->count() > 0) sample = oracle_sample;
            return run_oracle(oracle_n, sample, oracle_seed, oracle_seed_opt->count() > 0,
                              oracle_out);
        }
    } catch (const sdcrank::Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
