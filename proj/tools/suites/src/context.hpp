#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>

#include "pdpp/errors.hpp"
#include "pdpp/suites.hpp"

namespace pdpp::suites {

/// Replicate counts, seeds and timing shared by the experiments of one suite.
class Context {
public:
    Context(std::string suite, const SuiteOptions& opt) : opt_(opt) {
        run_.suite = std::move(suite);
        run_.budget = budget_name(opt.budget);
        run_.seed = opt.seed;
    }

    bool full() const { return opt_.budget == Budget::full; }
    int workers() const { return opt_.workers; }

    /// full under the full budget, quick otherwise
    long replicates(long full_n, long quick_n) const {
        const long n = full() ? full_n : quick_n;
        return opt_.max_replicates > 0 ? std::min(n, opt_.max_replicates) : n;
    }
    /// sqrt(full_n / replicates(full_n, quick_n))
    double widen(long full_n, long quick_n) const {
        return std::sqrt(static_cast<double>(full_n) / static_cast<double>(replicates(full_n, quick_n)));
    }

    /// Seed of a named experiment, derived from the suite seed.
    std::uint64_t seed_for(const std::string& name) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : name) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        std::uint64_t z = h ^ (opt_.seed + 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    template <class F>
    void run(const std::string& name, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        ExperimentReport rep;
        try {
            rep = f(seed_for(name));
        } catch (const numerical_error& e) {
            rep = ExperimentReport{};
            rep.notes.push_back(std::string("numerical error: ") + e.what());
            rep.add_abs("completed", 0.0, 1.0, 0.5);
            ++run_.errors;
        }
        rep.experiment = name;
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (opt_.progress) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.1f s", rep.seconds);
            opt_.progress(std::string(rep.passed() ? "PASS " : "FAIL ") + name + " (" + buf + ")");
        }
        run_.reports.push_back(std::move(rep));
    }

    SuiteRun take() { return std::move(run_); }

private:
    SuiteOptions opt_;
    SuiteRun run_;
};

SuiteRun run_core(const SuiteOptions& opt);
SuiteRun run_dickman(const SuiteOptions& opt);
SuiteRun run_laws(const SuiteOptions& opt);
SuiteRun run_gumbel(const SuiteOptions& opt);
SuiteRun run_clt(const SuiteOptions& opt);
SuiteRun run_markov_krein(const SuiteOptions& opt);

} // namespace pdpp::suites
