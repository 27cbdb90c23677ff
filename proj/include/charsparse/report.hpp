#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace charsparse {

// Tabular result of one CLI command.  Columns are fixed at construction and
// cells are pre-formatted strings, so rendering is deterministic: the same
// inputs produce byte-identical CSV/JSON, except for the optional timestamp
// line, which can be disabled.
class Report {
public:
    Report(std::string command, std::vector<std::string> columns);

    // ordered key/value pairs echoed into the header (parameters, seed, ...)
    void meta(const std::string& key, const std::string& value);
    // one data row; must match the column count
    void add_row(std::vector<std::string> cells);
    // mark the overall run as failed (a bound or audit did not hold)
    void fail() { pass_ = false; }
    bool passed() const { return pass_; }
    std::size_t row_count() const { return rows_.size(); }

    // CSV: "# key=value" header lines, a "# generated_at=..." line unless
    // disabled, then the column header and the rows (RFC 4180 quoting)
    std::string to_csv(bool with_timestamp) const;
    nlohmann::json to_json(bool with_timestamp) const;

    // render as "csv" or "json" and write to the path (empty or "-" = stdout)
    void write(const std::string& format, const std::string& out_path,
               bool with_timestamp) const;

private:
    std::string command_;
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<std::string>> rows_;
    bool pass_ = true;
};

}  // namespace charsparse
