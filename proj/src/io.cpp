#include "sdcrank/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sdcrank {

namespace {

std::string trim(const std::string& s) {
    std::size_t lo = 0;
    std::size_t hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
    return s.substr(lo, hi - lo);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

double parse_cell(const std::string& token, std::size_t data_row, const std::string& column_label) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw_error(ErrorKind::ParseError, "cannot parse '" + token + "' at row " +
                                               std::to_string(data_row) + ", column " +
                                               column_label);
    }
    if (!std::isfinite(value)) {
        throw_error(ErrorKind::ParseError, "non-finite value '" + token + "' at row " +
                                               std::to_string(data_row) + ", column " +
                                               column_label);
    }
    return value;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw_error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    }
    return out;
}

std::string optional_to_text(const std::optional<double>& value) {
    return value ? format_double(*value) : "NA";
}

}  // namespace

NumericMatrix load_csv(const DatasetSource& source) {
    std::ifstream in(source.path);
    if (!in) {
        throw_error(ErrorKind::IoError, "cannot open '" + source.path + "' for reading");
    }

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) {
        throw_error(ErrorKind::InvalidInput, "'" + source.path + "' contains no data");
    }

    std::vector<std::string> header_names;
    std::size_t first_data_line = 0;
    if (source.header) {
        header_names = split_csv_line(lines[0]);
        first_data_line = 1;
    }
    if (first_data_line >= lines.size()) {
        throw_error(ErrorKind::InvalidInput, "'" + source.path + "' contains no data rows");
    }
    const std::size_t file_cols =
        source.header ? header_names.size() : split_csv_line(lines[first_data_line]).size();
    if (file_cols == 0) {
        throw_error(ErrorKind::InvalidInput, "'" + source.path + "' has no columns");
    }

    // Resolve the column selection to file positions, keeping file order.
    std::vector<std::size_t> selected;
    if (source.selected_columns) {
        if (source.selected_columns->empty()) {
            throw_error(ErrorKind::InvalidInput, "column selection is empty");
        }
        for (const std::string& raw : *source.selected_columns) {
            const std::string token = trim(raw);
            std::size_t index = 0;
            if (all_digits(token)) {
                index = static_cast<std::size_t>(std::stoull(token));
                if (index >= file_cols) {
                    throw_error(ErrorKind::InvalidInput,
                                "column index " + token + " out of range (file has " +
                                    std::to_string(file_cols) + " columns)");
                }
            } else {
                if (!source.header) {
                    throw_error(ErrorKind::InvalidInput,
                                "column '" + token + "' selected by name but the file has no header");
                }
                const auto it = std::find(header_names.begin(), header_names.end(), token);
                if (it == header_names.end()) {
                    throw_error(ErrorKind::InvalidInput, "unknown column '" + token + "'");
                }
                index = static_cast<std::size_t>(it - header_names.begin());
            }
            if (std::find(selected.begin(), selected.end(), index) != selected.end()) {
                throw_error(ErrorKind::InvalidInput, "column '" + token + "' selected twice");
            }
            selected.push_back(index);
        }
        std::sort(selected.begin(), selected.end());
    } else {
        for (std::size_t j = 0; j < file_cols; ++j) selected.push_back(j);
    }

    std::vector<std::string> names;
    if (source.header) {
        for (std::size_t j : selected) names.push_back(header_names[j]);
    }

    const std::size_t n = lines.size() - first_data_line;
    const std::size_t p = selected.size();
    std::vector<double> values;
    values.reserve(n * p);
    for (std::size_t r = 0; r < n; ++r) {
        const std::string& row_line = lines[first_data_line + r];
        if (trim(row_line).empty()) {
            throw_error(ErrorKind::ParseError, "blank line at row " + std::to_string(r + 1));
        }
        const std::vector<std::string> fields = split_csv_line(row_line);
        if (fields.size() != file_cols) {
            throw_error(ErrorKind::ParseError,
                        "row " + std::to_string(r + 1) + " has " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(file_cols));
        }
        for (std::size_t s = 0; s < p; ++s) {
            const std::size_t j = selected[s];
            const std::string label = source.header ? "'" + header_names[j] + "'"
                                                    : "index " + std::to_string(j);
            values.push_back(parse_cell(fields[j], r + 1, label));
        }
    }
    return NumericMatrix(n, p, std::move(values), std::move(names));
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_matrix_csv(const NumericMatrix& matrix, std::ostream& out) {
    if (matrix.has_column_names()) {
        const auto& names = matrix.column_names();
        for (std::size_t j = 0; j < names.size(); ++j) {
            out << (j ? "," : "") << names[j];
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            out << (j ? "," : "") << format_double(matrix(i, j));
        }
        out << '\n';
    }
}

void write_matrix_csv(const NumericMatrix& matrix, const std::string& path) {
    auto out = open_for_write(path);
    write_matrix_csv(matrix, out);
}

void write_rank_matrix_csv(const RankMatrix& ranks, const std::vector<std::string>& names,
                           std::ostream& out) {
    if (!names.empty()) {
        for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
        out << '\n';
    }
    for (std::size_t i = 0; i < ranks.rows(); ++i) {
        for (std::size_t j = 0; j < ranks.cols(); ++j) {
            out << (j ? "," : "") << ranks(i, j);
        }
        out << '\n';
    }
}

void write_experiment_csv(const ExperimentResult& result, std::ostream& out) {
    out << "grid_value,metric,value\n";
    for (std::size_t gi = 0; gi < result.grid.size(); ++gi) {
        for (std::string_view name : kAllMetrics) {
            out << format_double(result.grid[gi]) << ',' << name << ','
                << format_double(metric_value(result.reports[gi], name)) << '\n';
        }
    }
}

void write_experiment_csv(const ExperimentResult& result, const std::string& path) {
    auto out = open_for_write(path);
    write_experiment_csv(result, out);
}

void write_spearman_summary_csv(const ExperimentResult& result, std::ostream& out) {
    out << "metric,reference,spearman\n";
    for (const auto& [name, rho] : result.spearman_vs_grid) {
        out << name << ",grid," << optional_to_text(rho) << '\n';
    }
    for (const auto& cross : result.cross) {
        out << cross.bounded_metric << ',' << cross.unbounded_metric << ','
            << optional_to_text(cross.spearman) << '\n';
    }
}

void write_spearman_summary_csv(const ExperimentResult& result, const std::string& path) {
    auto out = open_for_write(path);
    write_spearman_summary_csv(result, out);
}

void write_replication_csv(const ReplicationSummary& summary, std::ostream& out) {
    out << "replication,grid_value,metric,value\n";
    for (std::size_t r = 0; r < summary.per_replication.size(); ++r) {
        const ExperimentResult& result = summary.per_replication[r];
        for (std::size_t gi = 0; gi < result.grid.size(); ++gi) {
            for (std::string_view name : kAllMetrics) {
                out << r + 1 << ',' << format_double(result.grid[gi]) << ',' << name << ','
                    << format_double(metric_value(result.reports[gi], name)) << '\n';
            }
        }
    }
}

void write_replication_csv(const ReplicationSummary& summary, const std::string& path) {
    auto out = open_for_write(path);
    write_replication_csv(summary, out);
}

void write_replication_summary_csv(const ReplicationSummary& summary, std::ostream& out) {
    out << "replication,metric,spearman\n";
    for (std::size_t r = 0; r < summary.per_replication.size(); ++r) {
        for (const auto& [name, rho] : summary.per_replication[r].spearman_vs_grid) {
            out << r + 1 << ',' << name << ',' << optional_to_text(rho) << '\n';
        }
    }
}

void write_replication_summary_csv(const ReplicationSummary& summary, const std::string& path) {
    auto out = open_for_write(path);
    write_replication_summary_csv(summary, out);
}

void write_experiment_json(const ExperimentResult& result, std::ostream& out) {
    const auto join_doubles = [&](const std::vector<double>& values) {
        std::string text;
        for (std::size_t i = 0; i < values.size(); ++i) {
            text += (i ? "," : "");
            text += format_double(values[i]);
        }
        return text;
    };

    out << "{\n";
    out << "  \"method\": \"" << to_string(result.method) << "\",\n";
    out << "  \"grid\": [" << join_doubles(result.grid) << "],\n";
    out << "  \"metrics\": {\n";
    for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
        out << "    \"" << kAllMetrics[m] << "\": ["
            << join_doubles(metric_series(result, kAllMetrics[m])) << "]"
            << (m + 1 < kAllMetrics.size() ? "," : "") << '\n';
    }
    out << "  },\n";
    out << "  \"il1_skipped_cells\": [";
    for (std::size_t gi = 0; gi < result.reports.size(); ++gi) {
        out << (gi ? "," : "") << result.reports[gi].il1_skipped_cells;
    }
    out << "],\n";
    out << "  \"spearman_vs_grid\": {";
    for (std::size_t i = 0; i < result.spearman_vs_grid.size(); ++i) {
        const auto& [name, rho] = result.spearman_vs_grid[i];
        out << (i ? ", " : "") << "\"" << name << "\": "
            << (rho ? format_double(*rho) : "null");
    }
    out << "},\n";
    out << "  \"cross_metric_spearman\": [";
    for (std::size_t i = 0; i < result.cross.size(); ++i) {
        const auto& cross = result.cross[i];
        out << (i ? ", " : "") << "{\"bounded\": \"" << cross.bounded_metric
            << "\", \"unbounded\": \"" << cross.unbounded_metric << "\", \"spearman\": "
            << (cross.spearman ? format_double(*cross.spearman) : "null") << "}";
    }
    out << "]\n";
    out << "}\n";
}

void write_experiment_json(const ExperimentResult& result, const std::string& path) {
    auto out = open_for_write(path);
    write_experiment_json(result, out);
}

void write_permutation_csv(const std::vector<PermutationDistanceRecord>& records,
                           std::ostream& out) {
    out << "index,permutation,abs_distance,sq_distance,bounded_abs,bounded_sq\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        out << i + 1 << ',';
        for (std::size_t j = 0; j < rec.permutation.size(); ++j) {
            out << (j ? " " : "") << rec.permutation[j];
        }
        out << ',' << rec.abs_distance << ',' << rec.sq_distance << ','
            << format_double(rec.bounded_abs) << ',' << format_double(rec.bounded_sq) << '\n';
    }
}

}  // namespace sdcrank
