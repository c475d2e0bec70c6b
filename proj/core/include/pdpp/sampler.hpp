#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "pdpp/nu.hpp"
#include "pdpp/params.hpp"
#include "pdpp/rng.hpp"

namespace pdpp {

inline constexpr long kDefaultStickCap = 1'000'000;
inline constexpr double kDefaultEps = 1e-9;

struct StopRule {
    enum class Kind { residual_below, count };
    Kind kind = Kind::residual_below;
    double eps = kDefaultEps;
    long n = 0;

    static StopRule residual(double eps) { return {Kind::residual_below, eps, 0}; }
    static StopRule count(long n) { return {Kind::count, 0.0, n}; }
};

/// Sticks in generation order and the unallocated mass.
struct StickSample {
    std::vector<double> sticks;
    double residual = 1.0;
    bool capped = false;
};

/// Largest m weights in decreasing order.
struct RankedPrefix {
    std::vector<double> weights;
    bool certified = false;
    double residual = 1.0;
    long sticks_used = 0;
};

/// Incremental stick-breaking generator: Y_i ~ Beta(1 - alpha, theta + i alpha).
class StickBreaker {
public:
    explicit StickBreaker(const PDParams& p) : p_(p) {}

    double next(RngStream& rng) {
        ++i_;
        const BetaDraw y = beta_pair(1.0 - p_.alpha, p_.theta + p_.alpha * static_cast<double>(i_), rng);
        const double stick = residual_ * y.y;
        residual_ *= y.one_minus_y;
        return stick;
    }

    double residual() const { return residual_; }
    long count() const { return i_; }
    /// Parameters of the rescaled remainder after the sticks drawn so far.
    PDParams remainder_params() const { return p_.shifted(static_cast<double>(i_)); }

private:
    PDParams p_;
    double residual_ = 1.0;
    long i_ = 0;
};

StickSample stick_breaking(const PDParams& p, StopRule stop, RngStream& rng, long cap = kDefaultStickCap);

RankedPrefix top_m(const PDParams& p, int m, RngStream& rng, long cap = kDefaultStickCap);

/// Certified prefix of all weights >= v_min, sorted decreasing.
RankedPrefix weights_above(const PDParams& p, double v_min, RngStream& rng, long cap = kDefaultStickCap);

/// Outcome of the events {V_1 < level} for several levels.
struct LevelEvents {
    std::vector<std::uint8_t> below;  ///< below[j] = 1 iff V_1 < levels[j]
    bool certified = false;
    long sticks_used = 0;
};

/// Decides {V_1 < level} exactly for each level: sticks are drawn until every level lies either
/// at or below the largest stick so far, or above both that stick and the residual.
LevelEvents largest_below(const PDParams& p, const std::vector<double>& levels, RngStream& rng,
                          long cap = kDefaultStickCap);

enum class TailPolicy { truncate, conditional_mean };

struct HpDraw {
    double value = 0.0;
    double residual = 0.0;
    long sticks = 0;
    bool certified = true;
};

/// H_p = sum V_i^p. truncate stops once r^p h_p(alpha, theta + n alpha) < tol;
/// conditional_mean stops once r^p sd(H_p) < tol and adds the expected remainder.
/// The rule is checked after every max(8, n/64) sticks.
HpDraw sample_Hp(const PDParams& p, double power, RngStream& rng, double tol,
                 TailPolicy tail = TailPolicy::truncate, long cap = kDefaultStickCap);

struct HpMultiDraw {
    std::vector<double> values;
    double residual = 0.0;
    long sticks = 0;
    bool certified = true;
};

/// H_p for several powers from one sample; the stopping rule of sample_Hp must hold for every power.
HpMultiDraw sample_H(const PDParams& p, const std::vector<double>& powers, RngStream& rng, double tol,
                     TailPolicy tail = TailPolicy::truncate, long cap = kDefaultStickCap);

struct MeanDraw {
    double value = 0.0;
    double residual = 0.0;
    /// eps * sup|X| for bounded nu, NaN otherwise
    double truncation_bound = 0.0;
    long sticks = 0;
};

/// M = sum X_i V_i truncated at residual < eps.
MeanDraw sample_mean_functional(const PDParams& p, const NuSpec& nu, RngStream& rng, double eps = kDefaultEps,
                                TailPolicy tail = TailPolicy::truncate, long cap = kDefaultStickCap);

/// Worker count used when none is given; 0 means hardware concurrency.
void set_default_workers(int workers);
int default_workers();

inline constexpr long kReplicateChunk = 4096;

/// Runs f(rng, index) for index in [0, n). Chunk c uses RngStream(seed, c), so
/// results do not depend on the number of workers.
template <class R, class F>
std::vector<R> run_replicates(long n, std::uint64_t seed, F&& f, int workers = 0) {
    std::vector<R> out(static_cast<std::size_t>(n));
    const long chunks = (n + kReplicateChunk - 1) / kReplicateChunk;
    if (workers <= 0) workers = default_workers();
    workers = static_cast<int>(std::min<long>(workers, std::max<long>(chunks, 1)));
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                RngStream rng(seed, static_cast<std::uint64_t>(c));
                const long end = std::min(n, (c + 1) * kReplicateChunk);
                for (long i = c * kReplicateChunk; i < end; ++i) out[static_cast<std::size_t>(i)] = f(rng, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

/// Chunked reduction: each chunk folds its replicates into a fresh Acc via f(rng, index, acc),
/// then chunk accumulators are merged in chunk order with merge(into, from).
template <class Acc, class F, class M>
Acc reduce_replicates(long n, std::uint64_t seed, const Acc& init, F&& f, M&& merge, int workers = 0) {
    const long chunks = (n + kReplicateChunk - 1) / kReplicateChunk;
    std::vector<Acc> parts(static_cast<std::size_t>(chunks), init);
    if (workers <= 0) workers = default_workers();
    workers = static_cast<int>(std::min<long>(workers, std::max<long>(chunks, 1)));
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                RngStream rng(seed, static_cast<std::uint64_t>(c));
                const long end = std::min(n, (c + 1) * kReplicateChunk);
                Acc& acc = parts[static_cast<std::size_t>(c)];
                for (long i = c * kReplicateChunk; i < end; ++i) f(rng, i, acc);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    Acc total = init;
    for (const auto& part : parts) merge(total, part);
    return total;
}

} // namespace pdpp
