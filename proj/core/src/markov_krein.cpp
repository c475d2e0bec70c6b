#include "pdpp/markov_krein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdpp/core.hpp"
#include "pdpp/errors.hpp"
#include "pdpp/quadrature.hpp"
#include "pdpp/special.hpp"

namespace pdpp {
namespace {

using cplx = std::complex<double>;

// e^w - 1 without cancellation for small |w|
cplx cexpm1(cplx w) {
    const double a = w.real(), b = w.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

cplx cf_minus_one(const NuSpec& nu, double x) {
    switch (nu.kind()) {
    case NuSpec::Kind::discrete: {
        cplx s{};
        for (const auto& a : nu.atoms()) s += a.p * cexpm1(cplx(0.0, a.x * x));
        return s;
    }
    case NuSpec::Kind::cauchy:
        return cexpm1(cplx(-nu.cauchy_scale() * std::abs(x), nu.cauchy_location() * x));
    case NuSpec::Kind::generic: return nu.cf(x) - 1.0;
    }
    return {};
}

double z_upper_bound(const NuSpec& nu) {
    const auto hi = nu.support_upper();
    if (!hi) throw domain_error("mk_identity_check: nu must have bounded support");
    return *hi;
}

std::vector<double> draw_means(const PDParams& p, const NuSpec& nu, const TransformOptions& opt) {
    if (opt.replicates < 2) throw domain_error("transform check: needs at least 2 replicates");
    return run_replicates<double>(
        opt.replicates, opt.seed,
        [&](RngStream& rng, long) { return sample_mean_functional(p, nu, rng, opt.eps, opt.tail).value; },
        opt.workers);
}

double max_gap(const std::vector<MCEstimate>& lhs, const std::vector<double>& rhs) {
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i].z_score(rhs[i])));
    return worst;
}

// nested simplex integral with g(v) = (psi(tv) - 1)/v:
//   tilde F_k(r) = int_0^1 u^{-alpha} (1-u)^{E_{k-1}} g(r u) tilde F_{k-1}(r (1-u)) du,  E_j = e + j (1 - alpha)
struct SimplexSeries {
    const NuSpec& nu;
    double t;
    double alpha;
    double e;
    double error = 0.0;

    cplx g(double v) const {
        const double x = t * v;
        if (x == 0.0) return {};
        return cf_minus_one(nu, x) / v;
    }

    cplx tilde(int k, double r) {
        if (k == 0) return 1.0;
        const double ek = e + (k - 1) * (1.0 - alpha);
        auto f = [&](double u) -> cplx { return g(r * u) * tilde(k - 1, r * (1.0 - u)); };
        QuadOptions opt;
        opt.rel_tol = k == 1 ? 1e-10 : 1e-8;
        opt.abs_tol = 1e-13;
        opt.throw_on_failure = false;
        const auto res = integrate<cplx>(f, 0.0, 1.0, EndpointWeights{-alpha, ek}, opt);
        error += res.error;
        return res.value;
    }
};

std::string fmt_short(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

} // namespace

std::complex<double> cf_nu(const NuSpec& nu, double t) { return nu.cf(t); }

ExperimentReport TransformCheckReport::to_report(const PDParams& p, const TransformOptions& opt, double n_se) const {
    ExperimentReport rep;
    rep.experiment = identity;
    rep.params = params_json(p);
    rep.params["eps"] = opt.eps;
    rep.replicates = opt.replicates;
    rep.seed = opt.seed;
    for (std::size_t i = 0; i < grid.size(); ++i)
        rep.add_se("lhs_at_" + fmt_short(grid[i]), lhs[i].mean, lhs[i].std_error, rhs[i], n_se);
    return rep;
}

double mk_rhs(const PDParams& p, const NuSpec& nu, double z) {
    validate_params(p.alpha, p.theta);
    if (!(z > z_upper_bound(nu))) throw domain_error("mk_rhs: z must exceed the support of nu");
    if (p.alpha == 0.0) {
        const double l = nu.expect([z](double x) { return std::log(z - x); });
        return std::exp(-p.theta * l);
    }
    const double a = nu.expect([&](double x) { return std::pow(z - x, p.alpha); });
    if (p.theta == 0.0) return std::log(a) / p.alpha;
    return std::exp(-p.theta / p.alpha * std::log(a));
}

TransformCheckReport mk_identity_check(const PDParams& p, const NuSpec& nu, const std::vector<double>& z_grid,
                                       const TransformOptions& opt) {
    validate_params(p.alpha, p.theta);
    const double hi = z_upper_bound(nu);
    for (double z : z_grid)
        if (!(z > hi)) throw domain_error("mk_identity_check: every z must exceed the support of nu");
    const auto m = draw_means(p, nu, opt);
    TransformCheckReport out;
    out.identity = "markov_krein";
    out.grid = z_grid;
    for (double z : z_grid) {
        RunningStats st;
        for (double x : m) st.add(p.theta == 0.0 ? std::log(z - x) : std::exp(-p.theta * std::log(z - x)));
        out.lhs.push_back(st.estimate());
        out.rhs.push_back(mk_rhs(p, nu, z));
    }
    out.max_gap_in_se = max_gap(out.lhs, out.rhs);
    return out;
}

double CfIncrementBound::operator()(double x) const {
    return std::min(2.0, coefficient * std::pow(std::abs(x), gamma));
}

CfIncrementBound cf_increment_bound(const NuSpec& nu, double alpha) {
    if (nu.kind() == NuSpec::Kind::cauchy) {
        // |e^w - 1| <= |w| for Re w <= 0
        return {std::hypot(nu.cauchy_location(), nu.cauchy_scale()), 1.0};
    }
    const double m1 = nu.abs_moment(1.0);
    if (std::isfinite(m1)) return {m1, 1.0};
    // |e^{iy} - 1| <= 2^{1-g} |y|^g
    const double g = alpha + 0.5 * (1.0 - alpha);
    const double mg = nu.abs_moment(g);
    if (!std::isfinite(mg)) throw domain_error("cf_increment_bound: no finite absolute moment above alpha");
    return {std::pow(2.0, 1.0 - g) * mg, g};
}

CfSeriesResult cf_series(const PDParams& p, const NuSpec& nu, double t, int n_max) {
    validate_params(p.alpha, p.theta);
    if (n_max < 0 || n_max > 3) throw domain_error("cf_series: supported for n_max <= 3 only");
    if (!nu.has_alpha_moment(p.alpha)) throw domain_error("cf_series: nu must have a finite alpha-moment");
    CfSeriesResult out;
    out.value = 1.0;
    double log_fact = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        log_fact += std::log(static_cast<double>(n));
        SimplexSeries ss{nu, t, p.alpha, p.theta + p.alpha * n - 1.0};
        const cplx integral = t == 0.0 ? cplx{} : ss.tilde(n, 1.0);
        const double w = std::exp(log_c(n, p) - log_fact);
        out.terms.push_back(w * integral);
        out.value += w * integral;
        out.quadrature_error += w * ss.error;
    }
    if (t == 0.0) return out;
    // |term_n| <= c_n/n! (B|t|^g Gamma(g-alpha))^n Gamma(theta+alpha n)/Gamma(theta+alpha n+n(g-alpha))
    const CfIncrementBound b = cf_increment_bound(nu, p.alpha);
    const double lk = std::log(b.coefficient * std::pow(std::abs(t), b.gamma)) + log_gamma(b.gamma - p.alpha);
    double tail = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int n = n_max + 1; n <= 4000; ++n) {
        const double lt = log_c(n, p) - std::lgamma(n + 1.0) + n * lk + log_gamma(p.theta + p.alpha * n) -
                          log_gamma(p.theta + p.alpha * n + n * (b.gamma - p.alpha));
        const double term = std::exp(lt);
        tail += term;
        if (n > n_max + 5 && term < 1e-18 * std::max(tail, 1e-300) && term < prev) break;
        if (n == 4000) tail = std::numeric_limits<double>::infinity();
        prev = term;
    }
    out.remainder_bound = tail;
    return out;
}

std::vector<EmpiricalCf> empirical_cf(const PDParams& p, const NuSpec& nu, const std::vector<double>& t_grid,
                                      const TransformOptions& opt) {
    const auto m = draw_means(p, nu, opt);
    std::vector<EmpiricalCf> out;
    for (double t : t_grid) {
        RunningStats re, im;
        for (double x : m) {
            re.add(std::cos(t * x));
            im.add(std::sin(t * x));
        }
        out.push_back({{re.mean(), im.mean()}, re.estimate().std_error, im.estimate().std_error});
    }
    return out;
}

ExperimentReport compose_check(double alpha, double beta, double theta, const NuSpec& nu, const ComposeOptions& opt) {
    if (!(beta > 0.0 && beta < alpha && alpha < 1.0)) throw domain_error("compose_check: requires 0 < beta < alpha < 1");
    if (!(theta > -beta)) throw domain_error("compose_check: requires theta > -beta");
    if (!nu.has_alpha_moment(alpha)) throw domain_error("compose_check: nu must have a finite alpha-moment");
    const PDParams direct{alpha, theta};
    const PDParams inner{alpha, -beta};
    const PDParams outer{beta, theta};
    const TailPolicy tail = nu.mean() ? TailPolicy::conditional_mean : TailPolicy::truncate;
    const auto& d = opt.direct;

    auto a = run_replicates<double>(
        d.replicates, d.seed,
        [&](RngStream& rng, long) { return sample_mean_functional(direct, nu, rng, opt.abs_eps, tail).value; },
        d.workers);

    // outer stick W carries an inner draw truncated at abs_eps / W, so every term has absolute error ~ abs_eps
    const auto nu_mean = nu.mean();
    auto b = run_replicates<double>(
        d.replicates, d.seed ^ 0x9e3779b97f4a7c15ULL,
        [&](RngStream& rng, long) {
            StickBreaker sb(outer);
            double sum = 0.0;
            while (sb.residual() >= opt.abs_eps && sb.count() < kDefaultStickCap) {
                const double w = sb.next(rng);
                if (w <= 0.0) continue;
                const double e = std::min(opt.abs_eps / w, 0.5);
                sum += w * sample_mean_functional(inner, nu, rng, e, tail).value;
            }
            if (tail == TailPolicy::conditional_mean) sum += sb.residual() * *nu_mean;
            return sum;
        },
        d.workers);

    const double ks = ks_two_sample(a, b);
    const double pv = ks_two_sample_pvalue(ks, d.replicates, d.replicates);
    ExperimentReport rep;
    rep.experiment = "composition";
    rep.params = {{"alpha", alpha}, {"beta", beta}, {"theta", theta}, {"nu", nu.to_json()},
                  {"abs_eps", opt.abs_eps}};
    rep.replicates = d.replicates;
    rep.seed = d.seed;
    Statistic s;
    s.name = "ks_two_sample";
    s.value = ks;
    rep.add(s);
    rep.add_above("ks_pvalue", pv, opt.p_threshold);
    return rep;
}

ExperimentReport fixed_point_check(const PDParams& p, const NuSpec& nu, const std::vector<double>& t_grid,
                                   const TransformOptions& opt, bool expect_fixed, double n_se) {
    const auto cf = empirical_cf(p, nu, t_grid, opt);
    ExperimentReport rep;
    rep.experiment = expect_fixed ? "fixed_point" : "non_fixed_point";
    rep.params = params_json(p);
    rep.params["nu"] = nu.to_json();
    rep.params["eps"] = opt.eps;
    rep.replicates = opt.replicates;
    rep.seed = opt.seed;
    double worst = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const cplx ref = nu.cf(t_grid[i]);
        const double gr = std::abs(cf[i].value.real() - ref.real()) / cf[i].se_re;
        const double gi = cf[i].se_im > 0.0 ? std::abs(cf[i].value.imag() - ref.imag()) / cf[i].se_im : 0.0;
        const double gap = std::max(gr, gi);
        worst = std::max(worst, gap);
        Statistic s;
        s.name = "gap_in_se_at_" + fmt_short(t_grid[i]);
        s.value = gap;
        s.reference = 0.0;
        s.tolerance = n_se;
        s.pass = expect_fixed ? gap < n_se : true;
        rep.add(s);
    }
    if (!expect_fixed) rep.add_above("max_gap_in_se", worst, n_se);
    return rep;
}

double membership_rhs(const PDParams& p, const NuSpec& nu, double lambda) {
    if (!(lambda > 0.0)) throw domain_error("membership_rhs: lambda must be positive");
    const double a = nu.expect([&](double x) { return std::pow(1.0 + std::abs(x) / lambda, p.alpha); });
    if (p.theta == 0.0) return -std::log(a) / p.alpha;
    return (std::exp(-p.theta / p.alpha * std::log(a)) - 1.0) / p.theta;
}

TransformCheckReport p_theta_membership_check(const PDParams& p, const NuSpec& nu, const std::vector<double>& lambdas,
                                              const TransformOptions& opt) {
    validate_params(p.alpha, p.theta);
    if (!(p.alpha > 0.0 && p.theta <= 0.0)) throw domain_error("p_theta_membership_check: requires alpha > 0, theta <= 0");
    const auto lo = nu.support_lower();
    if (!lo || *lo < 0.0) throw domain_error("p_theta_membership_check: nu must be supported on [0, inf)");
    const auto m = draw_means(p, nu, opt);
    TransformCheckReport out;
    out.identity = "p_theta_membership";
    out.grid = lambdas;
    for (double l : lambdas) {
        if (!(l > 0.0)) throw domain_error("p_theta_membership_check: lambda must be positive");
        RunningStats st;
        for (double x : m) {
            const double y = std::log1p(x / l);
            st.add(p.theta == 0.0 ? -y : std::expm1(-p.theta * y) / p.theta);
        }
        out.lhs.push_back(st.estimate());
        out.rhs.push_back(membership_rhs(p, nu, l));
    }
    out.max_gap_in_se = max_gap(out.lhs, out.rhs);
    return out;
}

namespace {

// e^{-s}(e^{-us} - 1) without overflow for u < 0
double damped_increment(double u, double s) {
    return u >= 0.0 ? std::exp(-s) * std::expm1(-u * s) : -std::exp(-(1.0 + u) * s) * std::expm1(u * s);
}

} // namespace

double kernel_gap_gamma(double theta, double u) {
    if (!(theta > 0.0 && u > -1.0)) throw domain_error("kernel_gap_gamma: requires theta > 0, u > -1");
    QuadOptions opt;
    opt.rel_tol = 1e-14;
    auto f = [&](double s) { return std::exp(-(1.0 + u) * s); };
    const double q = integrate_to_infinity<double>(f, 0.0, theta - 1.0, opt, 1.0 / (1.0 + u)).value;
    return std::abs(q - std::exp(log_gamma(theta) - theta * std::log1p(u)));
}

double kernel_gap_stable(double alpha, double u) {
    if (!(alpha > 0.0 && alpha < 1.0 && u > -1.0)) throw domain_error("kernel_gap_stable: requires 0 < alpha < 1, u > -1");
    QuadOptions opt;
    opt.rel_tol = 1e-14;
    auto f = [&](double s) { return damped_increment(u, s) / s; };
    const double q = C_alpha(alpha) * integrate_to_infinity<double>(f, 0.0, -alpha, opt).value;
    return std::abs(q - (1.0 - std::pow(1.0 + u, alpha)));
}

double kernel_gap_log(double u) {
    if (!(u > -1.0)) throw domain_error("kernel_gap_log: requires u > -1");
    QuadOptions opt;
    opt.rel_tol = 1e-14;
    auto f = [&](double s) { return damped_increment(u, s) / s; };
    const double q = integrate_to_infinity<double>(f, 0.0, 0.0, opt).value;
    return std::abs(q + std::log1p(u));
}

} // namespace pdpp
