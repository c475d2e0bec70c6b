#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "pdpp/errors.hpp"
#include "pdpp/laplace.hpp"
#include "pdpp/quadrature.hpp"
#include "pdpp/summation.hpp"
#include "pdpp/tabulated.hpp"

using namespace pdpp;

TEST(Quadrature, JacobiRuleIsExactForPolynomials) {
    for (double L : {-0.7, 0.0, 0.4})
        for (double R : {-0.5, 0.0, 1.3}) {
            const GaussRule& g = gauss_jacobi_rule(12, L, R);
            for (int k = 0; k <= 20; ++k) {
                double s = 0.0;
                for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
                const double ref = boost::math::beta(L + 1.0 + k, R + 1.0);
                EXPECT_NEAR(s, ref, 1e-13 * ref) << L << " " << R << " " << k;
            }
        }
}

TEST(Quadrature, EndpointSingularities) {
    const double v = quad([](double x) { return std::cos(x); }, 0.0, 1.0, {-0.5, -0.3});
    boost::math::quadrature::tanh_sinh<double> ts;
    const double ref = ts.integrate([](double x, double xc) {
        return std::cos(x) * std::pow(x, -0.5) * std::pow(x < 0.5 ? 1.0 - x : xc, -0.3);
    }, 0.0, 1.0);
    EXPECT_NEAR(v, ref, 1e-10);
    EXPECT_NEAR(quad([](double) { return 1.0; }, 0.0, 1.0, {-0.5, -0.5}), M_PI, 1e-13);
}

TEST(Quadrature, Infinity) {
    QuadOptions o;
    o.rel_tol = 1e-12;
    const auto r = integrate_to_infinity<double>([](double x) { return std::exp(-x); }, 0.0, -0.5, o);
    EXPECT_NEAR(r.value, std::sqrt(M_PI), 1e-11);
}

TEST(Quadrature, ReportsFailure) {
    QuadOptions o;
    o.max_intervals = 3;
    o.rel_tol = 1e-15;
    EXPECT_THROW(integrate<double>([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, {}, o), quadrature_error);
}

TEST(Summation, Compensated) {
    CompensatedSum s;
    s += 1.0;
    for (int i = 0; i < 1000; ++i) s += 1e-16;
    s += -1.0;
    EXPECT_NEAR(s.value(), 1e-13, 1e-26);
}

TEST(Tabulated, InterpolationAndRange) {
    std::vector<double> v;
    for (int i = 0; i <= 40; ++i) v.push_back(std::exp(-0.1 * i));
    for (Interp in : {Interp::linear, Interp::cubic_monotone, Interp::cubic}) {
        const TabulatedFunction t(0.0, 0.1, v, in);
        EXPECT_NEAR(t(1.05), std::exp(-1.05), in == Interp::linear ? 1e-3 : 1e-5);
        EXPECT_NEAR(t(2.0), v[20], 1e-14);
        EXPECT_THROW(t(4.01), domain_error);
        EXPECT_THROW(t(-0.01), domain_error);
    }
    EXPECT_EQ(interp_from_name(interp_name(Interp::cubic)), Interp::cubic);
}

TEST(Tabulated, MonotoneCubicPreservesMonotonicity) {
    std::vector<double> v{1.0, 1.0, 1.0, 0.9, 0.2, 0.1, 0.1};
    const TabulatedFunction t(0.0, 1.0, v, Interp::cubic_monotone);
    double prev = 2.0;
    for (int k = 0; k <= 600; ++k) {
        const double y = t(k / 100.0);
        EXPECT_LE(y, prev + 1e-15);
        prev = y;
    }
}

TEST(Tabulated, SaveLoadRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "pdpp_numerics_test";
    std::filesystem::create_directories(dir);
    const std::string csv = (dir / "t.csv").string();
    std::vector<double> v;
    for (int i = 0; i <= 64; ++i) v.push_back(1.0 / (1.0 + i / 3.0));
    const TabulatedFunction t(0.0, 1.0 / 16.0, v);
    const std::string hp = save_table(t, TableHeader{0.25, 1.5, 1.0 / 16.0, "volterra"}, csv, "rho");
    EXPECT_EQ(hp, header_path_for(csv));
    const LoadedTable back = load_table(csv);
    EXPECT_EQ(back.header.alpha, 0.25);
    EXPECT_EQ(back.header.theta, 1.5);
    EXPECT_EQ(back.header.method, "volterra");
    ASSERT_EQ(back.table.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(back.table.values()[i], v[i]);
    std::filesystem::remove_all(dir);
}

TEST(Laplace, ConstantTableIsNormalized) {
    const TabulatedFunction one(0.0, 1.0 / 64.0, std::vector<double>(64 * 30 + 1, 1.0));
    const Bracketed b = laplace_weighted(one, 2.0, 2.0, 1.0);
    EXPECT_TRUE(b.contains(1.0)) << b.lower << " " << b.upper;
    EXPECT_NEAR(b.value, 1.0, 1e-10);
    const Bracketed d = laplace_deficit(one, 0.5, 1.0);
    EXPECT_TRUE(d.contains(0.0));
}

TEST(Laplace, StepFunction) {
    // tab = 1 on [0, 1], 0 beyond: lambda int_0^1 e^{-lambda s} ds for theta = 1
    std::vector<double> v(64 * 8 + 1, 0.0);
    for (int i = 0; i <= 64; ++i) v[i] = 1.0;
    const TabulatedFunction step(0.0, 1.0 / 64.0, v, Interp::linear);
    const Bracketed b = laplace_weighted(step, 1.0, 3.0, 0.0);
    const double lin = 3.0 / 64.0;  // the linear ramp on the last cell
    EXPECT_NEAR(b.value, 1.0 - std::exp(-3.0), lin);
}
