#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdpp/params.hpp"

namespace pdpp {

/// A point of Delta_n (coordinates >= 0, sum <= 1) or of nabla_n(s) (non-increasing, sum <= s).
struct SimplexPoint {
    enum class Constraint { simplex, ordered };

    std::vector<double> coords;
    Constraint constraint = Constraint::simplex;
    double bound = 1.0;

    static SimplexPoint simplex(std::vector<double> v) { return {std::move(v), Constraint::simplex, 1.0}; }
    static SimplexPoint ordered(std::vector<double> v, double s = 1.0) {
        return {std::move(v), Constraint::ordered, s};
    }
    /// Whether the declared constraint holds within 1e-12.
    bool satisfies_constraint() const;
};

/// n-th correlation function on Delta_n; 0 off the open simplex.
double q_n(const PDParams& p, const std::vector<double>& v);
double q_n(const PDParams& p, const SimplexPoint& v);

/// P(#{i : s V_i >= 1} = j).
double count_probability(const PDParams& p, int j, double s);

/// rho_{m,alpha,theta}(s) = P(s V_m < 1).
double rho_m(const PDParams& p, int m, double s);

/// Density of V_m at v in (0, 1).
double vm_density(const PDParams& p, int m, double v);

/// Joint density of (V_1, ..., V_m) at a non-increasing point with sum <= 1.
double joint_density(const PDParams& p, const std::vector<double>& v);
double joint_density(const PDParams& p, const SimplexPoint& v);

/// Sign convention of the final exponent -theta/alpha -/+ m in the alpha > 0 moment integrand.
enum class MomentExponent { minus_m, plus_m };

struct MomentOptions {
    long mc_replicates = 1'000'000;
    std::uint64_t seed = 1;
    double rel_tol = 1e-10;
};

struct MomentResult {
    double value = 0.0;
    /// quadrature error estimate, or the standard error on the Monte Carlo path
    double error = 0.0;
    std::string method;
    std::string warning;
};

/// E[V_1^{a_1} ... V_m^{a_m}]; quadrature for m <= 3, Monte Carlo otherwise.
MomentResult mixed_moment(const PDParams& p, const std::vector<double>& a, const MomentOptions& opt = {});

/// The iterated-quadrature moment integral with an explicit exponent convention (m <= 3).
double moment_quadrature(const PDParams& p, const std::vector<double>& a, MomentExponent convention,
                         double rel_tol = 1e-10, double* error = nullptr);

/// E[H_p] for p > alpha.
double h_p(const PDParams& p, double power);
/// Cov(H_p, H_q) for p, q > alpha.
double cov_H(const PDParams& p, double power_p, double power_q);

} // namespace pdpp
