#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace pdpp::cli {

enum ExitCode { ok = 0, check_failed = 1, bad_input = 2, internal = 3 };

struct DickmanArgs {
    double alpha = 0.0;
    double theta = 1.0;
    double s_max = 5.0;
    double step = 1.0 / 64.0;
    std::string method = "auto";
    std::string out;
};

struct SampleArgs {
    double alpha = 0.0;
    double theta = 1.0;
    std::string mode = "top-m";
    int m = 1;
    double p = 2.0;
    std::string nu_file;
    std::string nu;
    long n = 1000;
    std::optional<std::uint64_t> seed;
    double eps = 1e-9;
    long count = 0;
    std::string format = "csv";
    std::string out;
    int workers = 0;
};

struct VerifyArgs {
    std::string suite = "all";
    std::string budget = "full";
    std::uint64_t seed = 1;
    std::string out;
    int workers = 0;
    long max_replicates = 0;
    bool quiet = false;
};

int run_dickman(const DickmanArgs& a);
int run_sample(const SampleArgs& a);
int run_verify(const VerifyArgs& a);

} // namespace pdpp::cli
