#include "pdpp/nu.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "pdpp/errors.hpp"
#include "pdpp/quadrature.hpp"

namespace pdpp {

NuSpec NuSpec::discrete(std::vector<Atom> atoms) {
    if (atoms.empty()) throw domain_error("discrete nu: needs at least one atom");
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!(a.p >= 0.0) || !std::isfinite(a.x)) throw domain_error("discrete nu: invalid atom");
        total += a.p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw domain_error("discrete nu: probabilities must sum to 1 within 1e-12");
    NuSpec nu;
    nu.kind_ = Kind::discrete;
    nu.atoms_ = std::move(atoms);
    double c = 0.0;
    for (const auto& a : nu.atoms_) {
        c += a.p;
        nu.cumulative_.push_back(c);
    }
    nu.cumulative_.back() = 1.0;
    return nu;
}

NuSpec NuSpec::cauchy(double m, double sigma) {
    if (!std::isfinite(m) || !(sigma >= 0.0)) throw domain_error("cauchy nu: requires finite m and sigma >= 0");
    if (sigma == 0.0) return point_mass(m);
    NuSpec nu;
    nu.kind_ = Kind::cauchy;
    nu.m_ = m;
    nu.sigma_ = sigma;
    return nu;
}

NuSpec NuSpec::uniform(double a, double b) {
    if (!(a < b)) throw domain_error("uniform nu: requires a < b");
    Generic g;
    g.name = "uniform";
    g.sampler = [a, b](RngStream& rng) { return a + (b - a) * rng.uniform(); };
    g.cf = [a, b](double t) -> std::complex<double> {
        if (t == 0.0) return 1.0;
        const std::complex<double> i(0.0, 1.0);
        return (std::exp(i * t * b) - std::exp(i * t * a)) / (i * t * (b - a));
    };
    g.expect = [a, b](const std::function<double(double)>& f) {
        return quad(f, a, b, EndpointWeights{}, 1e-12) / (b - a);
    };
    g.alpha_moment_finite = true;
    g.mean = 0.5 * (a + b);
    g.lower = a;
    g.upper = b;
    g.abs_moment = [a, b](double gamma) {
        auto f = [gamma](double x) { return std::pow(std::abs(x), gamma); };
        std::vector<double> cuts;
        if (a < 0.0 && b > 0.0) cuts.push_back(0.0);
        QuadOptions opt;
        opt.rel_tol = 1e-12;
        return integrate<double>(f, a, b, EndpointWeights{}, opt, cuts).value / (b - a);
    };
    g.description = {{"kind", "uniform"}, {"bounds", {a, b}}};
    return generic(std::move(g));
}

NuSpec NuSpec::generic(Generic g) {
    if (!g.sampler) throw domain_error("generic nu: a sampler is required");
    NuSpec nu;
    nu.kind_ = Kind::generic;
    nu.generic_ = std::move(g);
    return nu;
}

std::string NuSpec::name() const {
    switch (kind_) {
    case Kind::discrete: return "discrete";
    case Kind::cauchy: return "cauchy";
    case Kind::generic: return generic_.name.empty() ? "generic" : generic_.name;
    }
    return "generic";
}

double NuSpec::sample(RngStream& rng) const {
    switch (kind_) {
    case Kind::discrete: {
        if (atoms_.size() == 1) return atoms_[0].x;
        const double u = rng.uniform();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), atoms_.size() - 1);
        return atoms_[idx].x;
    }
    case Kind::cauchy: return m_ + sigma_ * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
    case Kind::generic: return generic_.sampler(rng);
    }
    return 0.0;
}

std::complex<double> NuSpec::cf(double t) const {
    const std::complex<double> i(0.0, 1.0);
    switch (kind_) {
    case Kind::discrete: {
        std::complex<double> s = 0.0;
        for (const auto& a : atoms_) s += a.p * std::exp(i * (t * a.x));
        return s;
    }
    case Kind::cauchy: return std::exp(i * (m_ * t) - sigma_ * std::abs(t));
    case Kind::generic:
        if (!generic_.cf) throw domain_error("cf_nu: generic measure has no characteristic function");
        return generic_.cf(t);
    }
    return 1.0;
}

bool NuSpec::has_alpha_moment(double alpha) const {
    switch (kind_) {
    case Kind::discrete: return true;
    case Kind::cauchy: return alpha < 1.0;
    case Kind::generic: return generic_.alpha_moment_finite;
    }
    return false;
}

std::optional<double> NuSpec::mean() const {
    switch (kind_) {
    case Kind::discrete: {
        double s = 0.0;
        for (const auto& a : atoms_) s += a.p * a.x;
        return s;
    }
    case Kind::cauchy: return std::nullopt;
    case Kind::generic: return generic_.mean;
    }
    return std::nullopt;
}

std::optional<double> NuSpec::support_lower() const {
    switch (kind_) {
    case Kind::discrete: {
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& a : atoms_)
            if (a.p > 0.0) lo = std::min(lo, a.x);
        return lo;
    }
    case Kind::cauchy: return std::nullopt;
    case Kind::generic: return generic_.lower;
    }
    return std::nullopt;
}

std::optional<double> NuSpec::support_upper() const {
    switch (kind_) {
    case Kind::discrete: {
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& a : atoms_)
            if (a.p > 0.0) hi = std::max(hi, a.x);
        return hi;
    }
    case Kind::cauchy: return std::nullopt;
    case Kind::generic: return generic_.upper;
    }
    return std::nullopt;
}

std::optional<double> NuSpec::support_bound() const {
    const auto lo = support_lower();
    const auto hi = support_upper();
    if (!lo || !hi) return std::nullopt;
    return std::max(std::abs(*lo), std::abs(*hi));
}

double NuSpec::abs_moment(double gamma) const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw domain_error("abs_moment: gamma must lie in (0, 1]");
    switch (kind_) {
    case Kind::discrete: {
        double s = 0.0;
        for (const auto& a : atoms_) s += a.p * std::pow(std::abs(a.x), gamma);
        return s;
    }
    case Kind::cauchy: {
        if (gamma >= 1.0) return std::numeric_limits<double>::infinity();
        if (m_ != 0.0) {
            // |m + sigma C|^g <= |m|^g + sigma^g |C|^g for g <= 1
            return std::pow(std::abs(m_), gamma) + std::pow(sigma_, gamma) / std::cos(std::numbers::pi * gamma / 2.0);
        }
        return std::pow(sigma_, gamma) / std::cos(std::numbers::pi * gamma / 2.0);
    }
    case Kind::generic:
        if (generic_.abs_moment) return generic_.abs_moment(gamma);
        if (auto b = support_bound()) return std::pow(*b, gamma);
        return std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::infinity();
}

double NuSpec::expect(const std::function<double(double)>& g) const {
    switch (kind_) {
    case Kind::discrete: {
        double s = 0.0;
        for (const auto& a : atoms_) s += a.p * g(a.x);
        return s;
    }
    case Kind::cauchy: throw domain_error("expect: not available for a Cauchy measure");
    case Kind::generic:
        if (!generic_.expect) throw domain_error("expect: generic measure provides no expectation rule");
        return generic_.expect(g);
    }
    return 0.0;
}

nlohmann::ordered_json NuSpec::to_json() const {
    nlohmann::ordered_json j;
    switch (kind_) {
    case Kind::discrete: {
        j["kind"] = "discrete";
        auto arr = nlohmann::ordered_json::array();
        for (const auto& a : atoms_) arr.push_back({a.x, a.p});
        j["atoms"] = arr;
        break;
    }
    case Kind::cauchy:
        j["kind"] = "cauchy";
        j["m"] = m_;
        j["sigma"] = sigma_;
        break;
    case Kind::generic:
        if (generic_.description.is_object()) {
            for (auto it = generic_.description.begin(); it != generic_.description.end(); ++it) j[it.key()] = it.value();
        }
        if (!j.contains("kind")) j["kind"] = name();
        break;
    }
    if (auto b = support_bound()) j["support_bound"] = *b;
    else j["support_bound"] = nullptr;
    return j;
}

NuSpec NuSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind")) throw domain_error("nu spec: expected an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "discrete") {
            std::vector<Atom> atoms;
            for (const auto& a : j.at("atoms")) {
                if (a.is_array()) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
                else atoms.push_back({a.at("x").get<double>(), a.at("p").get<double>()});
            }
            return discrete(std::move(atoms));
        }
        if (kind == "cauchy") {
            if (j.contains("params")) return cauchy(j["params"].at(0).get<double>(), j["params"].at(1).get<double>());
            return cauchy(j.at("m").get<double>(), j.at("sigma").get<double>());
        }
        if (kind == "uniform") {
            const auto& b = j.at("bounds");
            return uniform(b.at(0).get<double>(), b.at(1).get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("nu spec: malformed ") + kind + " entry: " + e.what());
    }
    throw domain_error("nu spec: unknown kind '" + kind + "' (expected discrete, cauchy or uniform)");
}

NuSpec NuSpec::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("nu spec: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw domain_error("nu spec: invalid JSON in " + path + ": " + e.what());
    }
    return from_json(j);
}

} // namespace pdpp
