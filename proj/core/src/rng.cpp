#include "pdpp/rng.hpp"

#include <cmath>

namespace pdpp {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = stream ^ 0x6a09e667f3bcc909ULL;
    const std::uint64_t b = splitmix64(t);
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                         static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                         static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    auto seq = make_seed_seq(seed, stream_id);
    engine_.seed(seq);
}

double RngStream::gamma_at_least_one(double a) {
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RngStream::gamma(double a) {
    if (a >= 1.0) return gamma_at_least_one(a);
    return gamma_at_least_one(a + 1.0) * std::pow(uniform(), 1.0 / a);
}

double RngStream::log_gamma_variate(double a) {
    if (a >= 1.0) return std::log(gamma_at_least_one(a));
    return std::log(gamma_at_least_one(a + 1.0)) + std::log(uniform()) / a;
}

BetaDraw beta_pair(double a, double b, RngStream& rng) {
    if (a >= 1.0 && b >= 1.0) {
        const double ga = rng.gamma(a);
        const double gb = rng.gamma(b);
        const double s = ga + gb;
        return {ga / s, gb / s};
    }
    const double la = rng.log_gamma_variate(a);
    const double lb = rng.log_gamma_variate(b);
    const double d = lb - la;
    // y = 1 / (1 + e^d), 1 - y = 1 / (1 + e^-d)
    if (d > 0) {
        const double e = std::exp(-d);
        return {e / (1.0 + e), 1.0 / (1.0 + e)};
    }
    const double e = std::exp(d);
    return {1.0 / (1.0 + e), e / (1.0 + e)};
}

double beta_variate(double a, double b, RngStream& rng) { return beta_pair(a, b, rng).y; }

} // namespace pdpp
