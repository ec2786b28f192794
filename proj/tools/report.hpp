#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace latllt::cli {

using Cell = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;
using Fields = std::vector<std::pair<std::string, Cell>>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Tabular command output. CSV is the primary rendering; JSON carries the
/// same tables and summary values.
struct Report {
    std::string command;
    Fields config;
    std::vector<Table> tables;
    Fields summary;
};

std::string format_cell(const Cell& cell);
void write_csv(std::ostream& out, const Report& report);
void write_json(std::ostream& out, const Report& report);

} // namespace latllt::cli
