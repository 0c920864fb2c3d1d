// report.hpp - tabular command output in CSV, JSON and human-readable form
//
// Machine formats print 12 significant digits, tables 4. Metadata lines carry
// everything that may differ between identical runs (timestamps) and can be
// dropped wholesale.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace licore::cli {

enum class Format { Csv, Json, Table };
Format parse_format(const std::string& name);

// Empty cells print as blank (CSV), null (JSON) or "-" (table).
using Cell = std::variant<std::monostate, double, std::string, bool>;

inline Cell optional_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

struct Report {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<Table> tables;

    void add_meta(const std::string& key, const std::string& value);
    void add_meta(const std::string& key, double value);
};

// %.12g, with nan / inf / -inf spelled out.
std::string format_machine(double v);
// %.4g for human tables.
std::string format_human(double v);

void write_csv(std::ostream& out, const Report& report, bool with_metadata);
nlohmann::ordered_json to_json(const Report& report, bool with_metadata);
void write_json(std::ostream& out, const Report& report, bool with_metadata);
void write_table(std::ostream& out, const Report& report, bool with_metadata);
void write_report(std::ostream& out, const Report& report, Format format, bool with_metadata);

} // namespace licore::cli
