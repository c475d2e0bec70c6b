#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdpp/report.hpp"

namespace pdpp {

enum class Budget { quick, full };

std::string budget_name(Budget b);
Budget budget_from_name(const std::string& name);

struct SuiteOptions {
    Budget budget = Budget::full;
    std::uint64_t seed = 1;
    int workers = 0;
    /// upper bound on every Monte Carlo replicate count; 0 for none
    long max_replicates = 0;
    /// called with one line per finished experiment
    std::function<void(const std::string&)> progress;
};

/// Reports of one suite. An experiment that threw a numerical error is kept as a failed
/// report carrying the message, and counted in errors.
struct SuiteRun {
    std::string suite;
    std::string budget;
    std::uint64_t seed = 0;
    std::vector<ExperimentReport> reports;
    double seconds = 0.0;
    int errors = 0;

    bool passed() const;
    nlohmann::ordered_json to_json() const;
    static SuiteRun from_json(const nlohmann::json& j);
};

/// core, dickman, laws, gumbel, clt, markov-krein
const std::vector<std::string>& suite_names();

SuiteRun run_suite(const std::string& name, const SuiteOptions& opt);

/// One suite by name, or every suite for "all".
std::vector<SuiteRun> run_suites(const std::string& name, const SuiteOptions& opt);

/// {budget, seed, seconds, pass, suites: [...]}
nlohmann::ordered_json verify_json(const std::vector<SuiteRun>& runs, Budget budget, std::uint64_t seed,
                                   double seconds);

} // namespace pdpp
