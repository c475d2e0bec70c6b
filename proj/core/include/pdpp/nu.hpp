#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdpp/rng.hpp"

namespace pdpp {

struct Atom {
    double x;
    double p;
};

/// A base probability measure nu on the real line.
class NuSpec {
public:
    enum class Kind { discrete, cauchy, generic };

    struct Generic {
        std::string name;
        std::function<double(RngStream&)> sampler;
        std::function<std::complex<double>(double)> cf;
        /// E g(X); optional, required by identity checks that integrate against nu
        std::function<double(const std::function<double(double)>&)> expect;
        bool alpha_moment_finite = true;
        std::optional<double> mean;
        std::optional<double> lower;
        std::optional<double> upper;
        /// E|X|^gamma for gamma in (0, 1]; optional, used for characteristic-function bounds
        std::function<double(double)> abs_moment;
        nlohmann::json description;
    };

    static NuSpec discrete(std::vector<Atom> atoms);
    static NuSpec point_mass(double c) { return discrete({{c, 1.0}}); }
    static NuSpec cauchy(double m, double sigma);
    static NuSpec uniform(double a, double b);
    static NuSpec generic(Generic g);

    Kind kind() const { return kind_; }
    std::string name() const;

    double sample(RngStream& rng) const;
    std::complex<double> cf(double t) const;

    /// Whether int |x|^alpha nu(dx) is finite (the P_alpha membership flag).
    bool has_alpha_moment(double alpha) const;
    std::optional<double> mean() const;
    /// Smallest B with supp(nu) in [-B, B], when bounded.
    std::optional<double> support_bound() const;
    std::optional<double> support_lower() const;
    std::optional<double> support_upper() const;
    /// E|X|^gamma for gamma in (0, 1]; infinite when unknown.
    double abs_moment(double gamma) const;
    /// E g(X) (exact for discrete, quadrature for uniform, delegated for generic).
    double expect(const std::function<double(double)>& g) const;

    const std::vector<Atom>& atoms() const { return atoms_; }
    double cauchy_location() const { return m_; }
    double cauchy_scale() const { return sigma_; }

    /// {kind, atoms | [m, sigma] | [a, b], support_bound}
    nlohmann::ordered_json to_json() const;
    static NuSpec from_json(const nlohmann::json& j);
    static NuSpec from_file(const std::string& path);

private:
    Kind kind_ = Kind::discrete;
    std::vector<Atom> atoms_;
    std::vector<double> cumulative_;
    double m_ = 0.0;
    double sigma_ = 1.0;
    Generic generic_;
};

} // namespace pdpp
