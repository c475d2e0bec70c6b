#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pdpp {

/// Numeric table with named columns.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
};

/// Comma-separated, header row, 17 significant digits.
void write_csv(const CsvTable& t, std::ostream& os);
void write_csv(const CsvTable& t, const std::string& path);
CsvTable read_csv(std::istream& is);
CsvTable read_csv(const std::string& path);

/// {columns: [...], rows: [[...], ...]}
nlohmann::ordered_json table_json(const CsvTable& t);
CsvTable table_from_json(const nlohmann::json& j);

void write_json(const nlohmann::ordered_json& j, const std::string& path);
nlohmann::json read_json(const std::string& path);

} // namespace pdpp
