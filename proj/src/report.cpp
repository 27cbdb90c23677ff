#include "charsparse/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "charsparse/errors.hpp"

namespace charsparse {

namespace {

// RFC 4180: quote a cell iff it contains a comma, quote, or newline
std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

Report::Report(std::string command, std::vector<std::string> columns)
    : command_(std::move(command)), columns_(std::move(columns)) {
    if (columns_.empty())
        throw invalid_parameter_error("Report: at least one column is required");
}

void Report::meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

void Report::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size())
        throw invalid_parameter_error("Report: row width does not match column count");
    rows_.push_back(std::move(cells));
}

std::string Report::to_csv(bool with_timestamp) const {
    std::ostringstream os;
    os << "# command=" << command_ << '\n';
    for (const auto& [k, v] : meta_) os << "# " << k << '=' << v << '\n';
    os << "# pass=" << (pass_ ? "true" : "false") << '\n';
    if (with_timestamp) os << "# generated_at=" << timestamp_utc() << '\n';
    for (std::size_t j = 0; j < columns_.size(); ++j)
        os << (j ? "," : "") << csv_cell(columns_[j]);
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t j = 0; j < row.size(); ++j)
            os << (j ? "," : "") << csv_cell(row[j]);
        os << '\n';
    }
    return os.str();
}

nlohmann::json Report::to_json(bool with_timestamp) const {
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [k, v] : meta_) meta[k] = v;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rows_) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t j = 0; j < row.size(); ++j) obj[columns_[j]] = row[j];
        rows.push_back(std::move(obj));
    }
    nlohmann::json doc{{"command", command_},
                       {"meta", std::move(meta)},
                       {"columns", columns_},
                       {"rows", std::move(rows)},
                       {"pass", pass_}};
    if (with_timestamp) doc["generated_at"] = timestamp_utc();
    return doc;
}

void Report::write(const std::string& format, const std::string& out_path,
                   bool with_timestamp) const {
    std::string body;
    if (format == "csv") {
        body = to_csv(with_timestamp);
    } else if (format == "json") {
        body = to_json(with_timestamp).dump(2);
        body += '\n';
    } else {
        throw invalid_parameter_error("Report: unknown format '" + format +
                                      "' (expected csv or json)");
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw invalid_parameter_error("Report: cannot open output file " + out_path);
    f << body;
    if (!f) throw invalid_parameter_error("Report: failed writing " + out_path);
}

}  // namespace charsparse
