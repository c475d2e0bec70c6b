#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdpp/params.hpp"

namespace pdpp {

/// One named statistic of an experiment with its reference and pass flag.
struct Statistic {
    std::string name;
    double value = 0.0;
    double se = std::numeric_limits<double>::quiet_NaN();
    double reference = std::numeric_limits<double>::quiet_NaN();
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    bool pass = true;
};

struct ExperimentReport {
    std::string experiment;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    long replicates = 0;
    std::uint64_t seed = 0;
    std::vector<Statistic> statistics;
    std::vector<std::string> notes;
    /// wall-clock time of the experiment, 0 when not measured
    double seconds = 0.0;

    bool passed() const;
    Statistic& add(Statistic s);
    /// value within tolerance of reference (absolute)
    Statistic& add_abs(const std::string& name, double value, double reference, double tol);
    /// |value - reference| < n_se * se
    Statistic& add_se(const std::string& name, double value, double se, double reference, double n_se);
    /// value < bound
    Statistic& add_below(const std::string& name, double value, double bound);
    /// value > bound
    Statistic& add_above(const std::string& name, double value, double bound);

    nlohmann::ordered_json to_json() const;
    /// Inverse of to_json; null numbers read back as NaN.
    static ExperimentReport from_json(const nlohmann::json& j);
};

nlohmann::ordered_json params_json(const PDParams& p);

} // namespace pdpp
