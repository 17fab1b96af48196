#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sdcrank/harness.hpp"
#include "sdcrank/matrix.hpp"
#include "sdcrank/stats.hpp"

namespace sdcrank {

// A CSV file to ingest: comma-separated, '.' decimal point, optional
// header row. Columns may be selected by header name or 0-based index;
// an empty selection means all columns.
struct DatasetSource {
    std::string path;
    std::optional<std::vector<std::string>> selected_columns;
    bool header = true;
};

NumericMatrix load_csv(const DatasetSource& source);

// 17 significant digits; round-trips every double exactly.
std::string format_double(double value);

void write_matrix_csv(const NumericMatrix& matrix, std::ostream& out);
void write_matrix_csv(const NumericMatrix& matrix, const std::string& path);

void write_rank_matrix_csv(const RankMatrix& ranks, const std::vector<std::string>& names,
                           std::ostream& out);

// Long-format metric values: grid_value,metric,value with one row per
// (grid point, metric).
void write_experiment_csv(const ExperimentResult& result, std::ostream& out);
void write_experiment_csv(const ExperimentResult& result, const std::string& path);

// Spearman summary: metric,reference,spearman where reference is "grid"
// or the unbounded metric of a cross pairing. Undefined values print NA.
void write_spearman_summary_csv(const ExperimentResult& result, std::ostream& out);
void write_spearman_summary_csv(const ExperimentResult& result, const std::string& path);

// Replication variants carry a leading replication index column.
void write_replication_csv(const ReplicationSummary& summary, std::ostream& out);
void write_replication_csv(const ReplicationSummary& summary, const std::string& path);
void write_replication_summary_csv(const ReplicationSummary& summary, std::ostream& out);
void write_replication_summary_csv(const ReplicationSummary& summary, const std::string& path);

// JSON mirror of an ExperimentResult using the same numeric formatting
// as the CSV writers.
void write_experiment_json(const ExperimentResult& result, std::ostream& out);
void write_experiment_json(const ExperimentResult& result, const std::string& path);

// Permutation-distance records: index,permutation,abs_distance,
// sq_distance,bounded_abs,bounded_sq. Permutations are space-separated.
void write_permutation_csv(const std::vector<PermutationDistanceRecord>& records,
                           std::ostream& out);

}  // namespace sdcrank
