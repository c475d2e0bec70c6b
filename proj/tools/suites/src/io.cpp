#include "pdpp/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "pdpp/errors.hpp"

namespace pdpp {

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw domain_error("csv: no column '" + name + "'");
}

void write_csv(const CsvTable& t, std::ostream& os) {
    os.imbue(std::locale::classic());
    os << std::setprecision(17);
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    }
}

void write_csv(const CsvTable& t, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw domain_error("cannot write " + path);
    write_csv(t, os);
}

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    if (!std::getline(is, line)) throw domain_error("csv: missing header row");
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) t.columns.push_back(cell);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        ls.imbue(std::locale::classic());
        for (std::string cell; std::getline(ls, cell, ',');) {
            std::istringstream cs(cell);
            cs.imbue(std::locale::classic());
            double x = 0.0;
            if (cell == "nan")
                x = std::numeric_limits<double>::quiet_NaN();
            else if (!(cs >> x))
                throw domain_error("csv: bad number '" + cell + "'");
            row.push_back(x);
        }
        if (row.size() != t.columns.size()) throw domain_error("csv: row width differs from header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw domain_error("cannot read " + path);
    return read_csv(is);
}

nlohmann::ordered_json table_json(const CsvTable& t) {
    nlohmann::ordered_json j;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    return j;
}

CsvTable table_from_json(const nlohmann::json& j) {
    CsvTable t;
    t.columns = j.at("columns").get<std::vector<std::string>>();
    t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    return t;
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw domain_error("cannot write " + path);
    os << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw domain_error("cannot read " + path);
    try {
        return nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(path + ": " + e.what());
    }
}

} // namespace pdpp
