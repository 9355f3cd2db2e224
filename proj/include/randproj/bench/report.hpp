#pragma once

#include <map>
#include <string>
#include <vector>

#include "randproj/linalg/random.hpp"

namespace randproj::bench {

enum class ReportFormat { csv, json };

ReportFormat report_format_from_string(const std::string& name);

struct ReportRow {
    double sweep_value = 0.0;
    std::vector<double> metrics;  ///< aligned with ExperimentReport::metric_names
};

/// Table produced by one experiment run. Every row carries one value per
/// metric name; the sweep column is named by `sweep_name`.
struct ExperimentReport {
    std::string experiment_name;
    std::map<std::string, std::string> parameters;
    std::string sweep_name = "sweep";
    std::vector<std::string> metric_names;
    std::vector<ReportRow> rows;
    linalg::Seed seed{};
    std::string timestamp;  ///< UTC, ISO 8601

    void add_row(double sweep_value, std::vector<double> metrics);
    /// Value of metric `name` in row `row`; throws std::out_of_range for unknown names.
    double metric(std::size_t row, const std::string& name) const;
    /// Column header: sweep_name followed by metric_names.
    std::vector<std::string> columns() const;
};

/// Field-for-field equality; NaN compares equal to NaN.
bool same_report(const ExperimentReport& a, const ExperimentReport& b);

/// Current UTC time, second resolution.
std::string utc_timestamp();

/// CSV layout: metadata lines starting with '#' ("# experiment: name",
/// "# seed: N", "# timestamp: T", one "# param name: value" per parameter),
/// then the header row and one line per report row. Values use %.17g; LF
/// line endings. JSON holds the same fields; non-finite numbers are written
/// as the strings "nan", "inf" and "-inf".
std::string format_report(const ExperimentReport& report, ReportFormat format);
ExperimentReport parse_report(const std::string& text, ReportFormat format);

void save_report(const ExperimentReport& report, const std::string& path, ReportFormat format);
ExperimentReport load_report(const std::string& path, ReportFormat format);

}  // namespace randproj::bench
