#include "licore/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "licore/errors.hpp"

namespace licore::cli {
namespace {

std::string printf_g(double v, int digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c, bool machine) {
    return std::visit(
        [machine](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return machine ? "" : "-";
            else if constexpr (std::is_same_v<T, double>) return machine ? format_machine(v) : format_human(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return v;
        },
        c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                // round through the 12-digit text so JSON and CSV carry the same value
                return std::strtod(format_machine(v).c_str(), nullptr);
            } else return v;
        },
        c);
}

} // namespace

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "table") return Format::Table;
    throw InvalidInput("unknown output format '" + name + "' (expected csv, json or table)");
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("report row width does not match table '" + name + "'");
    rows.push_back(std::move(row));
}

void Report::add_meta(const std::string& key, const std::string& value) { metadata.emplace_back(key, value); }
void Report::add_meta(const std::string& key, double value) { metadata.emplace_back(key, format_machine(value)); }

std::string format_machine(double v) { return printf_g(v, 12); }
std::string format_human(double v) { return printf_g(v, 4); }

void write_csv(std::ostream& out, const Report& report, bool with_metadata) {
    if (with_metadata)
        for (const auto& [k, v] : report.metadata) out << "# " << k << ": " << v << '\n';
    bool first = true;
    for (const auto& t : report.tables) {
        if (!first) out << '\n';
        first = false;
        if (report.tables.size() > 1) out << "# table: " << t.name << '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i], true));
            out << '\n';
        }
    }
}

nlohmann::ordered_json to_json(const Report& report, bool with_metadata) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    if (with_metadata) {
        nlohmann::ordered_json meta = nlohmann::ordered_json::object();
        for (const auto& [k, v] : report.metadata) meta[k] = v;
        doc["metadata"] = meta;
    }
    nlohmann::ordered_json tables = nlohmann::ordered_json::object();
    for (const auto& t : report.tables) {
        nlohmann::ordered_json records = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json rec = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) rec[t.columns[i]] = cell_json(row[i]);
            records.push_back(std::move(rec));
        }
        tables[t.name] = std::move(records);
    }
    doc["tables"] = std::move(tables);
    return doc;
}

void write_json(std::ostream& out, const Report& report, bool with_metadata) {
    out << to_json(report, with_metadata).dump(2) << '\n';
}

void write_table(std::ostream& out, const Report& report, bool with_metadata) {
    if (with_metadata)
        for (const auto& [k, v] : report.metadata) out << k << ": " << v << '\n';
    for (const auto& t : report.tables) {
        out << '\n' << "[" << t.name << "]\n";
        std::vector<std::size_t> width(t.columns.size());
        for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
        std::vector<std::vector<std::string>> text;
        for (const auto& row : t.rows) {
            auto& line = text.emplace_back();
            for (std::size_t i = 0; i < row.size(); ++i) {
                line.push_back(cell_text(row[i], false));
                width[i] = std::max(width[i], line.back().size());
            }
        }
        const auto emit = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out << "  ";
                out << cells[i];
                if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
            }
            out << '\n';
        };
        emit(t.columns);
        std::vector<std::string> rule;
        for (auto w : width) rule.emplace_back(w, '-');
        emit(rule);
        for (const auto& line : text) emit(line);
    }
}

void write_report(std::ostream& out, const Report& report, Format format, bool with_metadata) {
    switch (format) {
    case Format::Csv: write_csv(out, report, with_metadata); break;
    case Format::Json: write_json(out, report, with_metadata); break;
    case Format::Table: write_table(out, report, with_metadata); break;
    }
}

} // namespace licore::cli
