#include "pdpp/report.hpp"

#include <cmath>
#include <limits>

namespace pdpp {

namespace {

nlohmann::ordered_json number_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

} // namespace

bool ExperimentReport::passed() const {
    for (const auto& s : statistics)
        if (!s.pass) return false;
    return true;
}

Statistic& ExperimentReport::add(Statistic s) {
    statistics.push_back(std::move(s));
    return statistics.back();
}

Statistic& ExperimentReport::add_abs(const std::string& name, double value, double reference, double tol) {
    Statistic s;
    s.name = name;
    s.value = value;
    s.reference = reference;
    s.tolerance = tol;
    s.pass = std::abs(value - reference) < tol;
    return add(std::move(s));
}

Statistic& ExperimentReport::add_se(const std::string& name, double value, double se, double reference,
                                    double n_se) {
    Statistic s;
    s.name = name;
    s.value = value;
    s.se = se;
    s.reference = reference;
    s.tolerance = n_se * se;
    s.pass = std::abs(value - reference) < n_se * se || value == reference;
    return add(std::move(s));
}

Statistic& ExperimentReport::add_below(const std::string& name, double value, double bound) {
    Statistic s;
    s.name = name;
    s.value = value;
    s.tolerance = bound;
    s.pass = value < bound;
    return add(std::move(s));
}

Statistic& ExperimentReport::add_above(const std::string& name, double value, double bound) {
    Statistic s;
    s.name = name;
    s.value = value;
    s.tolerance = bound;
    s.pass = value > bound;
    return add(std::move(s));
}

nlohmann::ordered_json ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["params"] = params;
    j["replicates"] = replicates;
    j["seed"] = seed;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : statistics) {
        nlohmann::ordered_json e;
        e["name"] = s.name;
        e["value"] = number_or_null(s.value);
        e["se"] = number_or_null(s.se);
        e["reference"] = number_or_null(s.reference);
        e["tolerance"] = number_or_null(s.tolerance);
        e["pass"] = s.pass;
        arr.push_back(std::move(e));
    }
    j["statistics"] = arr;
    if (!notes.empty()) j["notes"] = notes;
    j["seconds"] = seconds;
    j["pass"] = passed();
    return j;
}

ExperimentReport ExperimentReport::from_json(const nlohmann::json& j) {
    auto number = [](const nlohmann::json& v) {
        return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    };
    ExperimentReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.params = nlohmann::ordered_json::parse(j.at("params").dump());
    r.replicates = j.at("replicates").get<long>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("statistics")) {
        Statistic s;
        s.name = e.at("name").get<std::string>();
        s.value = number(e.at("value"));
        s.se = number(e.at("se"));
        s.reference = number(e.at("reference"));
        s.tolerance = number(e.at("tolerance"));
        s.pass = e.at("pass").get<bool>();
        r.statistics.push_back(std::move(s));
    }
    if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("seconds")) r.seconds = j.at("seconds").get<double>();
    return r;
}

nlohmann::ordered_json params_json(const PDParams& p) {
    nlohmann::ordered_json j;
    j["alpha"] = p.alpha;
    j["theta"] = p.theta;
    return j;
}

} // namespace pdpp
