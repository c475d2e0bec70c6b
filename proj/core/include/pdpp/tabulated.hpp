#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pdpp {

enum class Interp {
    linear,
    cubic_monotone,  ///< Fritsch-Carlson monotone Hermite cubic
    cubic,           ///< local four-point Lagrange cubic
};

/// Values on the uniform grid grid_start + i*step with an interpolation rule.
/// Evaluation outside the tabulated range throws pdpp::domain_error.
class TabulatedFunction {
public:
    TabulatedFunction() = default;
    TabulatedFunction(double grid_start, double step, std::vector<double> values,
                      Interp interp = Interp::cubic_monotone);

    double operator()(double x) const;

    double grid_start() const { return start_; }
    double step() const { return step_; }
    double grid_end() const { return start_ + step_ * static_cast<double>(values_.size() - 1); }
    double node(std::size_t i) const { return start_ + step_ * static_cast<double>(i); }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    Interp interp() const { return interp_; }
    bool covers(double x) const;

private:
    double start_ = 0.0;
    double step_ = 1.0;
    std::vector<double> values_;
    std::vector<double> slopes_;
    Interp interp_ = Interp::linear;
};

/// Metadata written next to a table dump.
struct TableHeader {
    double alpha = 0.0;
    double theta = 0.0;
    double step = 0.0;
    std::string method;
};

std::string interp_name(Interp interp);
Interp interp_from_name(const std::string& name);

/// Writes `csv_path` (columns s,value; 17 significant digits) and the JSON header next to it
/// (same path with extension .json). Returns the header path.
std::string save_table(const TabulatedFunction& tab, const TableHeader& header, const std::string& csv_path,
                       const std::string& value_column = "value");

struct LoadedTable {
    TabulatedFunction table;
    TableHeader header;
};

/// Reads a table written by save_table; the grid must be uniform to 1e-9 relative.
LoadedTable load_table(const std::string& csv_path, Interp interp = Interp::cubic_monotone);

std::string header_path_for(const std::string& csv_path);

} // namespace pdpp
