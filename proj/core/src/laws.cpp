#include "pdpp/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pdpp/core.hpp"
#include "pdpp/dickman.hpp"
#include "pdpp/errors.hpp"
#include "pdpp/quadrature.hpp"
#include "pdpp/sampler.hpp"
#include "pdpp/special.hpp"
#include "pdpp/stats.hpp"
#include "pdpp/summation.hpp"

namespace pdpp {

namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_q1(const PDParams& p, double v) {
    return log_c(1, p) - (p.alpha + 1.0) * std::log(v) + (p.theta + p.alpha - 1.0) * std::log1p(-v);
}

} // namespace

bool SimplexPoint::satisfies_constraint() const {
    constexpr double tol = 1e-12;
    double sum = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] < -tol) return false;
        if (constraint == Constraint::ordered && i > 0 && coords[i] > coords[i - 1] + tol) return false;
        sum += coords[i];
    }
    return sum <= bound + tol;
}

double q_n(const PDParams& p, const std::vector<double>& v) {
    validate_params(p.alpha, p.theta);
    const int n = static_cast<int>(v.size());
    if (n == 0) return 1.0;
    double sum = 0.0;
    double log_prod = 0.0;
    for (double x : v) {
        if (!(x > 0.0)) return 0.0;
        sum += x;
        log_prod -= (p.alpha + 1.0) * std::log(x);
    }
    if (!(sum < 1.0)) return 0.0;
    return std::exp(log_c(n, p) + log_prod + (p.theta + p.alpha * n - 1.0) * std::log1p(-sum));
}

double q_n(const PDParams& p, const SimplexPoint& v) {
    if (v.constraint != SimplexPoint::Constraint::simplex || !v.satisfies_constraint())
        throw domain_error("q_n: point must lie in the simplex Delta_n");
    return q_n(p, v.coords);
}

double count_probability(const PDParams& p, int j, double s) {
    validate_params(p.alpha, p.theta);
    if (j < 0) throw domain_error("count_probability: j must be non-negative");
    if (!(s > 0.0)) throw domain_error("count_probability: s must be positive");
    if (j == 0) return rho(p, s);
    if (s < j) return 0.0;
    if (s <= kSeriesMax) {
        auto ev = evaluator_for(p);
        CompensatedSum sum;
        const int k_max = static_cast<int>(std::floor(s)) - j;
        for (int k = 0; k <= k_max; ++k) {
            const int n = j + k;
            const double term = std::exp(log_c(n, p) - log_factorial(j) - log_factorial(k)) * ev->I(n, s);
            sum += (k % 2 == 1) ? -term : term;
        }
        return std::clamp(sum.value(), 0.0, 1.0);
    }
    // One point v >= 1/s carries intensity q_1; the rest is (1 - v) times a PD(alpha, theta + alpha) sample.
    const PDParams next = p.shifted(1.0);
    const double lo = 1.0 / s;
    const double hi = j == 1 ? 1.0 : 1.0 - static_cast<double>(j - 1) / s;
    if (!(hi > lo)) return 0.0;
    std::vector<double> cuts;
    for (int k = 1; k < static_cast<int>(s); ++k) cuts.push_back(1.0 - static_cast<double>(k) / s);
    cuts.push_back(1.0 - kSeriesMax / s);
    const double right = j == 1 ? std::min(p.theta + p.alpha - 1.0, 0.0) : 0.0;
    auto f = [&](double v) {
        const double lw = right != 0.0 ? log_c(1, p) - (p.alpha + 1.0) * std::log(v) : log_q1(p, v);
        return std::exp(lw) * count_probability(next, j - 1, s * (1.0 - v));
    };
    QuadOptions opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-15;
    opt.throw_on_failure = false;
    const double value = integrate<double>(f, lo, hi, EndpointWeights{0.0, right}, opt, cuts).value / j;
    return std::clamp(value, 0.0, 1.0);
}

double rho_m(const PDParams& p, int m, double s) {
    validate_params(p.alpha, p.theta);
    if (m < 1) throw domain_error("rho_m: m must be a positive integer");
    if (!(s > 0.0)) throw domain_error("rho_m: s must be positive");
    if (s <= m) return 1.0;
    if (m == 1) return rho(p, s);
    if (s <= kSeriesMax) {
        auto ev = evaluator_for(p);
        CompensatedSum sum;
        const int k_max = static_cast<int>(std::floor(s - m));
        for (int k = 0; k <= k_max; ++k) {
            const int n = m + k;
            const double term =
                std::exp(log_c(n, p) - log_factorial(m - 1) - log_factorial(k)) * ev->I(n, s) / static_cast<double>(n);
            sum += (k % 2 == 1) ? -term : term;
        }
        const double value = 1.0 - sum.value();
        if (!(value >= -1e-8 && value <= 1.0 + 1e-8))
            throw numerical_error("rho_m: value outside [0, 1] at s=" + std::to_string(s));
        return std::clamp(value, 0.0, 1.0);
    }
    CompensatedSum sum;
    for (int j = 0; j < m; ++j) sum += count_probability(p, j, s);
    return std::clamp(sum.value(), 0.0, 1.0);
}

double vm_density(const PDParams& p, int m, double v) {
    validate_params(p.alpha, p.theta);
    if (m < 1) throw domain_error("vm_density: m must be a positive integer");
    if (!(v > 0.0 && v < 1.0)) return 0.0;
    if (m == 1) return v1_density(p, v);
    if (v >= 1.0 / m) return 0.0;
    return std::exp(log_q1(p, v)) * count_probability(p.shifted(1.0), m - 1, (1.0 - v) / v);
}

double joint_density(const PDParams& p, const std::vector<double>& v) {
    validate_params(p.alpha, p.theta);
    const int m = static_cast<int>(v.size());
    if (m == 0) throw domain_error("joint_density: empty point");
    double sum = 0.0;
    double log_prod = 0.0;
    for (int i = 0; i < m; ++i) {
        if (!(v[i] > 0.0)) return 0.0;
        if (i > 0 && v[i] > v[i - 1]) return 0.0;
        sum += v[i];
        log_prod -= (p.alpha + 1.0) * std::log(v[i]);
    }
    const double rest = 1.0 - sum;
    if (!(rest > 0.0)) return 0.0;
    const double base = std::exp(log_c(m, p) + log_prod + (p.theta + p.alpha * m - 1.0) * std::log(rest));
    const double y = rest / v[m - 1];
    return y <= 1.0 ? base : base * rho(p.shifted(static_cast<double>(m)), y);
}

double joint_density(const PDParams& p, const SimplexPoint& v) {
    if (v.constraint != SimplexPoint::Constraint::ordered || !v.satisfies_constraint())
        throw domain_error("joint_density: point must be non-increasing with sum <= 1");
    return joint_density(p, v.coords);
}

double moment_quadrature(const PDParams& p, const std::vector<double>& a, MomentExponent convention, double rel_tol,
                         double* error) {
    validate_params(p.alpha, p.theta);
    const int m = static_cast<int>(a.size());
    if (m < 1 || m > 3) throw domain_error("moment_quadrature: supports 1 <= m <= 3");
    const double A = std::accumulate(a.begin(), a.end(), 0.0);
    if (!(A > -p.theta)) throw domain_error("mixed_moment: requires a_1 + ... + a_m > -theta");
    const double al = p.alpha;
    const double th = p.theta;

    double log_pref;
    double f_power;  // local power of the tail factor at z -> 0
    double f_exp = 0.0;
    if (al == 0.0) {
        log_pref = m * std::log(th) + std::lgamma(th) - std::lgamma(th + A);
        f_power = th;
    } else {
        f_exp = -th / al + (convention == MomentExponent::minus_m ? -m : m);
        log_pref = std::lgamma(th + 1.0) + std::lgamma(th / al + m) + (m - 1) * std::log(al) - std::lgamma(th + A) -
                   std::lgamma(th / al + 1.0) - m * std::lgamma(1.0 - al);
        f_power = -al * f_exp;
    }
    const double Ca = C_alpha(al);
    auto log_tail_factor = [&](double z) {
        const double T = tail_integral_T(al, z);
        return al == 0.0 ? -th * T : f_exp * std::log1p(Ca * T);
    };

    std::vector<double> b(m);
    for (int i = 0; i < m; ++i) b[i] = a[i] - al - 1.0;

    QuadOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 0.0;

    // L_1(x) = Gamma(b_1 + 1, x), L_2(x) = int_x^inf z^{b_2} e^{-z} L_1(z) dz
    auto L1 = [&](double x) { return upper_incomplete_gamma_any(b[0] + 1.0, x); };
    auto L2 = [&](double x) {
        auto f = [&](double z) { return std::exp(b[1] * std::log(z) - z) * L1(z); };
        return integrate_to_infinity<double>(f, x, 0.0, opt, std::max(1.0, x)).value;
    };
    double p_inner = 0.0;
    if (m >= 2) p_inner = std::min(0.0, b[0] + 1.0);
    if (m >= 3) p_inner = std::min(0.0, b[1] + 1.0 + p_inner);
    const double e0 = b[m - 1] + f_power + p_inner;
    if (!(e0 > -1.0)) throw domain_error("mixed_moment: integrand not integrable at the origin");

    auto inner = [&](double z) -> double {
        if (m == 1) return 1.0;
        if (m == 2) return L1(z);
        return L2(z);
    };
    auto outer = [&](double z) { return std::exp(b[m - 1] * std::log(z) - z + log_tail_factor(z)) * inner(z); };
    auto head_f = [&](double z) { return outer(z) * std::exp(-e0 * std::log(z)); };
    auto head = integrate<double>(head_f, 0.0, 1.0, EndpointWeights{e0, 0.0}, opt);
    QuadOptions tail_opt = opt;
    tail_opt.abs_tol = 0.25 * rel_tol * std::abs(head.value);
    auto tail = integrate_to_infinity<double>(outer, 1.0, 0.0, tail_opt);
    const double pref = std::exp(log_pref);
    if (error) *error = pref * (head.error + tail.error);
    return pref * (head.value + tail.value);
}

MomentResult mixed_moment(const PDParams& p, const std::vector<double>& a, const MomentOptions& opt) {
    validate_params(p.alpha, p.theta);
    if (a.empty()) throw domain_error("mixed_moment: need at least one exponent");
    const double A = std::accumulate(a.begin(), a.end(), 0.0);
    if (!(A > -p.theta)) throw domain_error("mixed_moment: requires a_1 + ... + a_m > -theta");
    if (std::all_of(a.begin(), a.end(), [](double x) { return x == 0.0; })) return {1.0, 0.0, "exact", ""};
    const int m = static_cast<int>(a.size());
    if (m <= 3) {
        MomentResult r;
        r.value = moment_quadrature(p, a, MomentExponent::minus_m, opt.rel_tol, &r.error);
        r.method = "quadrature";
        return r;
    }
    if (opt.mc_replicates < 2) throw domain_error("mixed_moment: need at least two Monte Carlo replicates");
    struct Draw {
        double value;
        bool certified;
    };
    auto draws = run_replicates<Draw>(opt.mc_replicates, opt.seed, [&](RngStream& rng, long) {
        auto pre = top_m(p, m, rng);
        double v = 1.0;
        for (int i = 0; i < m; ++i) v *= std::pow(pre.weights[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i)]);
        return Draw{v, pre.certified};
    });
    RunningStats rs;
    long uncertified = 0;
    for (const auto& d : draws) {
        rs.add(d.value);
        if (!d.certified) ++uncertified;
    }
    const MCEstimate e = rs.estimate();
    MomentResult r{e.mean, e.std_error, "monte-carlo",
                   "m = " + std::to_string(m) + " exceeds the quadrature limit of 3; Monte Carlo estimate"};
    if (uncertified > 0) r.warning += "; " + std::to_string(uncertified) + " uncertified draws";
    return r;
}

double h_p(const PDParams& p, double power) {
    validate_params(p.alpha, p.theta);
    if (!(power > p.alpha)) throw domain_error("h_p: requires p > alpha");
    return std::exp(std::lgamma(p.theta + 1.0) - std::lgamma(p.theta + power) + std::lgamma(power - p.alpha) -
                    std::lgamma(1.0 - p.alpha));
}

double cov_H(const PDParams& p, double pp, double qq) {
    validate_params(p.alpha, p.theta);
    if (!(pp > p.alpha) || !(qq > p.alpha)) throw domain_error("cov_H: requires p, q > alpha");
    const double th = p.theta;
    const double lg1 = std::lgamma(th + 1.0);
    const double lk = std::lgamma(pp - p.alpha) + std::lgamma(qq - p.alpha) - 2.0 * std::lgamma(1.0 - p.alpha);
    const double first = std::exp(lk + lg1 - std::lgamma(th + pp + qq)) * (th + p.alpha);
    const double second = std::exp(lk + 2.0 * lg1 - std::lgamma(th + pp) - std::lgamma(th + qq));
    return h_p(p, pp + qq) + (first - second);
}

} // namespace pdpp
