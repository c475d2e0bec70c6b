#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>

#include "pdpp/laplace.hpp"
#include "pdpp/params.hpp"
#include "pdpp/tabulated.hpp"
#include "pdpp/volterra.hpp"

namespace pdpp {

/// Arguments up to this value are evaluated by the finite series; beyond it by the march tables.
inline constexpr double kSeriesMax = 4.0;

enum class RhoMethod { series, volterra, renewal, automatic };

std::string method_name(RhoMethod m);
RhoMethod method_from_name(const std::string& name);

/// Evaluator for rho_{alpha,theta} and I_{n,alpha,theta} with memoized tables.
/// Thread-safe; obtain shared instances through evaluator_for().
class DickmanEvaluator {
public:
    explicit DickmanEvaluator(const PDParams& p);

    const PDParams& params() const { return params_; }

    /// I_{n,alpha,theta}(s) by one quadrature over tabulated inner levels.
    double I(int n, double s) const;
    /// I_k(x) from the memoized level table (k >= 1).
    double I_tabulated(int k, double x) const;

    /// rho_{alpha,theta}(s): series for s <= kSeriesMax, march table beyond.
    double rho(double s) const;
    double rho_series(double s) const;
    /// Volterra (alpha > 0) or renewal (alpha = 0) table covering at least [0, s_needed].
    std::shared_ptr<const TabulatedFunction> march_table(double s_needed) const;

    static constexpr double kLevelStep = 1.0 / 256.0;
    static constexpr double kMarchStep = 1.0 / 512.0;

private:
    struct LevelTable {
        double exponent = 0.0;
        std::shared_ptr<const TabulatedFunction> g;
    };

    LevelTable level_table(int k, double x_needed) const;
    double level_exponent(int k) const;

    PDParams params_;
    mutable std::shared_mutex mutex_;
    mutable std::map<int, LevelTable> levels_;
    mutable std::shared_ptr<const TabulatedFunction> march_;
};

/// Process-wide evaluator for the given parameters.
std::shared_ptr<const DickmanEvaluator> evaluator_for(const PDParams& p);

double I_n(int n, const PDParams& p, double s);
double rho_series(const PDParams& p, double s);
/// rho through the shared evaluator (series or cached march table).
double rho(const PDParams& p, double s);

/// automatic samples the evaluator at the nodes; volterra and renewal return the raw march at step h;
/// series evaluates the finite series at every node.
TabulatedFunction rho_table(const PDParams& p, double s_max, double h, RhoMethod method = RhoMethod::automatic);

/// Density of V_1.
double v1_density(const PDParams& p, double v);

struct LaplaceCheck {
    Bracketed lhs;
    double rhs = 0.0;
    /// "weighted" for the theta > 0 form, "deficit" for the general form
    std::string form;

    double gap() const;
    bool bracket_contains_rhs() const { return lhs.contains(rhs); }
};

/// Both sides of the Laplace identity for rho at lambda, over a march table on [0, 60].
LaplaceCheck laplace_check(const PDParams& p, double lambda);

} // namespace pdpp
