#include "report.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "latllt/latllt.hpp"

namespace latllt::cli {

namespace {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

nlohmann::ordered_json to_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_double(v);
                // Round-trip through the CSV text so both renderings agree.
                return std::stod(format_double(v));
            } else {
                return v;
            }
        },
        cell);
}

nlohmann::ordered_json fields_json(const Fields& fields) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : fields) obj[k] = to_json(v);
    return obj;
}

} // namespace

std::string format_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else {
                return std::to_string(v);
            }
        },
        cell);
}

void write_csv(std::ostream& out, const Report& report) {
    out << "# latllt " << latllt::version << "\n";
    out << "# command: " << report.command << "\n";
    out << "# config: " << fields_json(report.config).dump() << "\n";
    for (const auto& table : report.tables) {
        out << "# table: " << table.name << "\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << table.columns[i];
        }
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
            out << "\n";
        }
    }
    for (const auto& [k, v] : report.summary) out << k << "," << format_cell(v) << "\n";
}

void write_json(std::ostream& out, const Report& report) {
    nlohmann::ordered_json doc;
    doc["header"] = {{"latllt", latllt::version}, {"command", report.command},
                     {"config", fields_json(report.config)}};
    nlohmann::ordered_json tables = nlohmann::ordered_json::object();
    for (const auto& table : report.tables) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const auto& cell : row) r.push_back(to_json(cell));
            rows.push_back(std::move(r));
        }
        tables[table.name] = {{"columns", table.columns}, {"rows", std::move(rows)}};
    }
    doc["tables"] = std::move(tables);
    doc["summary"] = fields_json(report.summary);
    out << doc.dump(2) << "\n";
}

} // namespace latllt::cli
