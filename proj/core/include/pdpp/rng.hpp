#pragma once

#include <cstdint>
#include <random>

namespace pdpp {

/// Deterministic random stream keyed by (seed, stream_id). Single owner; not for concurrent use.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
    double normal() { return normal_(engine_); }

    /// Gamma(a, 1) variate for a > 0 (Marsaglia-Tsang squeeze, boosted for a < 1).
    double gamma(double a);
    /// log of a Gamma(a, 1) variate; finite even when the variate itself would underflow.
    double log_gamma_variate(double a);

private:
    double gamma_at_least_one(double a);

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

struct BetaDraw {
    double y;            ///< the Beta(a, b) variate
    double one_minus_y;  ///< 1 - y computed without cancellation
};

/// Beta(a, b) as G_a / (G_a + G_b); returns both y and 1 - y.
BetaDraw beta_pair(double a, double b, RngStream& rng);

/// One Beta(a, b) draw in (0, 1).
double beta_variate(double a, double b, RngStream& rng);

} // namespace pdpp
