#include "pdpp/suites.hpp"

#include <chrono>

#include "context.hpp"
#include "pdpp/errors.hpp"

namespace pdpp {

std::string budget_name(Budget b) { return b == Budget::quick ? "quick" : "full"; }

Budget budget_from_name(const std::string& name) {
    if (name == "quick") return Budget::quick;
    if (name == "full") return Budget::full;
    throw domain_error("unknown budget '" + name + "' (expected quick or full)");
}

bool SuiteRun::passed() const {
    if (errors > 0) return false;
    for (const auto& r : reports)
        if (!r.passed()) return false;
    return true;
}

nlohmann::ordered_json SuiteRun::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["budget"] = budget;
    j["seed"] = seed;
    j["seconds"] = seconds;
    j["errors"] = errors;
    j["pass"] = passed();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    j["experiments"] = arr;
    return j;
}

SuiteRun SuiteRun::from_json(const nlohmann::json& j) {
    SuiteRun r;
    r.suite = j.at("suite").get<std::string>();
    r.budget = j.at("budget").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.seconds = j.at("seconds").get<double>();
    r.errors = j.at("errors").get<int>();
    for (const auto& e : j.at("experiments")) r.reports.push_back(ExperimentReport::from_json(e));
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"core", "dickman", "laws", "gumbel", "clt", "markov-krein"};
    return names;
}

SuiteRun run_suite(const std::string& name, const SuiteOptions& opt) {
    if (opt.max_replicates < 0) throw domain_error("max_replicates must be non-negative");
    if (opt.workers < 0) throw domain_error("workers must be non-negative");
    const auto t0 = std::chrono::steady_clock::now();
    SuiteRun run;
    if (name == "core")
        run = suites::run_core(opt);
    else if (name == "dickman")
        run = suites::run_dickman(opt);
    else if (name == "laws")
        run = suites::run_laws(opt);
    else if (name == "gumbel")
        run = suites::run_gumbel(opt);
    else if (name == "clt")
        run = suites::run_clt(opt);
    else if (name == "markov-krein")
        run = suites::run_markov_krein(opt);
    else
        throw domain_error("unknown suite '" + name + "'");
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

std::vector<SuiteRun> run_suites(const std::string& name, const SuiteOptions& opt) {
    std::vector<SuiteRun> out;
    if (name == "all") {
        for (const auto& s : suite_names()) out.push_back(run_suite(s, opt));
    } else {
        out.push_back(run_suite(name, opt));
    }
    return out;
}

nlohmann::ordered_json verify_json(const std::vector<SuiteRun>& runs, Budget budget, std::uint64_t seed,
                                   double seconds) {
    nlohmann::ordered_json j;
    j["budget"] = budget_name(budget);
    j["seed"] = seed;
    j["seconds"] = seconds;
    bool pass = true;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : runs) {
        pass = pass && r.passed();
        arr.push_back(r.to_json());
    }
    j["pass"] = pass;
    j["suites"] = arr;
    return j;
}

} // namespace pdpp
