#include "randproj/bench/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "randproj/error.hpp"

namespace randproj::bench {

using nlohmann::json;

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& context) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw DataError(context + ": malformed number '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

void check_text_field(const std::string& s, const char* what) {
    if (s.find('\n') != std::string::npos || s.find('\r') != std::string::npos) {
        throw std::invalid_argument(std::string("report ") + what + " contains a line break");
    }
}

json number_to_json(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

double number_from_json(const json& j) {
    if (j.is_string()) return parse_double(j.get<std::string>(), "json report");
    if (!j.is_number()) throw DataError("json report: expected a number");
    return j.get<double>();
}

std::string format_csv(const ExperimentReport& r) {
    check_text_field(r.experiment_name, "name");
    check_text_field(r.timestamp, "timestamp");
    std::ostringstream out;
    out << "# experiment: " << r.experiment_name << '\n';
    out << "# seed: " << r.seed.value << '\n';
    out << "# timestamp: " << r.timestamp << '\n';
    for (const auto& [key, value] : r.parameters) {
        if (key.find(':') != std::string::npos) throw std::invalid_argument("report parameter name contains ':'");
        check_text_field(key, "parameter name");
        check_text_field(value, "parameter value");
        out << "# param " << key << ": " << value << '\n';
    }
    const auto cols = r.columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i].find(',') != std::string::npos) throw std::invalid_argument("report column name contains ','");
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (const auto& row : r.rows) {
        out << format_double(row.sweep_value);
        for (double v : row.metrics) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

ExperimentReport parse_csv(const std::string& text) {
    ExperimentReport r;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    bool have_name = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = "csv report line " + std::to_string(line_no);
        if (line.rfind("# ", 0) == 0 && !have_header) {
            const std::string body = line.substr(2);
            const std::size_t colon = body.find(": ");
            if (colon == std::string::npos) throw DataError(where + ": malformed metadata");
            const std::string key = body.substr(0, colon);
            const std::string value = body.substr(colon + 2);
            if (key == "experiment") {
                r.experiment_name = value;
                have_name = true;
            } else if (key == "seed") {
                std::uint64_t s = 0;
                const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
                if (ec != std::errc() || ptr != value.data() + value.size()) throw DataError(where + ": bad seed");
                r.seed = linalg::Seed{s};
            } else if (key == "timestamp") {
                r.timestamp = value;
            } else if (key.rfind("param ", 0) == 0) {
                r.parameters[key.substr(6)] = value;
            } else {
                throw DataError(where + ": unknown metadata key '" + key + "'");
            }
            continue;
        }
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (!have_header) {
            r.sweep_name = cells.front();
            r.metric_names.assign(cells.begin() + 1, cells.end());
            have_header = true;
            continue;
        }
        if (cells.size() != r.metric_names.size() + 1) throw DataError(where + ": wrong number of cells");
        ReportRow row;
        row.sweep_value = parse_double(cells[0], where);
        for (std::size_t i = 1; i < cells.size(); ++i) row.metrics.push_back(parse_double(cells[i], where));
        r.rows.push_back(std::move(row));
    }
    if (!have_name || !have_header) throw DataError("csv report: missing experiment name or header row");
    return r;
}

std::string format_json(const ExperimentReport& r) {
    json j;
    j["experiment"] = r.experiment_name;
    j["seed"] = r.seed.value;
    j["timestamp"] = r.timestamp;
    j["parameters"] = r.parameters;
    j["sweep"] = r.sweep_name;
    j["columns"] = r.metric_names;
    json rows = json::array();
    for (const auto& row : r.rows) {
        json values = json::array();
        for (double v : row.metrics) values.push_back(number_to_json(v));
        rows.push_back({{"sweep_value", number_to_json(row.sweep_value)}, {"metrics", values}});
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

ExperimentReport parse_json(const std::string& text) {
    ExperimentReport r;
    try {
        const json j = json::parse(text);
        r.experiment_name = j.at("experiment").get<std::string>();
        r.seed = linalg::Seed{j.at("seed").get<std::uint64_t>()};
        r.timestamp = j.at("timestamp").get<std::string>();
        r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
        r.sweep_name = j.at("sweep").get<std::string>();
        r.metric_names = j.at("columns").get<std::vector<std::string>>();
        for (const auto& row : j.at("rows")) {
            ReportRow out;
            out.sweep_value = number_from_json(row.at("sweep_value"));
            for (const auto& v : row.at("metrics")) out.metrics.push_back(number_from_json(v));
            if (out.metrics.size() != r.metric_names.size()) throw DataError("json report: row width mismatch");
            r.rows.push_back(std::move(out));
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("json report: ") + e.what());
    }
    return r;
}

bool same_value(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

ReportFormat report_format_from_string(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw std::invalid_argument("unknown report format '" + name + "' (expected csv or json)");
}

void ExperimentReport::add_row(double sweep_value, std::vector<double> metrics) {
    if (metrics.size() != metric_names.size()) {
        throw std::invalid_argument("ExperimentReport::add_row: expected " + std::to_string(metric_names.size()) +
                                    " metrics, got " + std::to_string(metrics.size()));
    }
    rows.push_back({sweep_value, std::move(metrics)});
}

double ExperimentReport::metric(std::size_t row, const std::string& name) const {
    for (std::size_t i = 0; i < metric_names.size(); ++i) {
        if (metric_names[i] == name) return rows.at(row).metrics.at(i);
    }
    throw std::out_of_range("no metric named '" + name + "'");
}

std::vector<std::string> ExperimentReport::columns() const {
    std::vector<std::string> out{sweep_name};
    out.insert(out.end(), metric_names.begin(), metric_names.end());
    return out;
}

bool same_report(const ExperimentReport& a, const ExperimentReport& b) {
    if (a.experiment_name != b.experiment_name || a.parameters != b.parameters || a.sweep_name != b.sweep_name ||
        a.metric_names != b.metric_names || a.seed.value != b.seed.value || a.timestamp != b.timestamp ||
        a.rows.size() != b.rows.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (!same_value(a.rows[i].sweep_value, b.rows[i].sweep_value)) return false;
        if (a.rows[i].metrics.size() != b.rows[i].metrics.size()) return false;
        for (std::size_t k = 0; k < a.rows[i].metrics.size(); ++k)
            if (!same_value(a.rows[i].metrics[k], b.rows[i].metrics[k])) return false;
    }
    return true;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_report(const ExperimentReport& report, ReportFormat format) {
    return format == ReportFormat::csv ? format_csv(report) : format_json(report);
}

ExperimentReport parse_report(const std::string& text, ReportFormat format) {
    return format == ReportFormat::csv ? parse_csv(text) : parse_json(text);
}

void save_report(const ExperimentReport& report, const std::string& path, ReportFormat format) {
    const std::string text = format_report(report, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(path + ": cannot open file for writing");
    out << text;
    if (!out) throw DataError(path + ": write failed");
}

ExperimentReport load_report(const std::string& path, ReportFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path + ": cannot open file");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_report(text, format);
}

}  // namespace randproj::bench
