#include "pdpp/tabulated.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pdpp/errors.hpp"

namespace pdpp {
namespace {

// Fritsch-Carlson slopes for a uniform grid.
std::vector<double> monotone_slopes(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / h;
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            d[i] = 2.0 / (1.0 / delta[i - 1] + 1.0 / delta[i]);
        }
    }
    auto endpoint = [](double d0, double d1) {
        double s = (3.0 * d0 - d1) / 2.0;
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0)) return 3.0 * d0;
        return s;
    };
    d[0] = endpoint(delta[0], delta[1]);
    d[n - 1] = endpoint(delta[n - 2], delta[n - 3]);
    return d;
}

} // namespace

TabulatedFunction::TabulatedFunction(double grid_start, double step, std::vector<double> values, Interp interp)
    : start_(grid_start), step_(step), values_(std::move(values)), interp_(interp) {
    if (values_.empty()) throw domain_error("TabulatedFunction: values must be non-empty");
    if (!(step_ > 0.0)) throw domain_error("TabulatedFunction: step must be positive");
    if (interp_ == Interp::cubic_monotone) slopes_ = monotone_slopes(values_, step_);
}

bool TabulatedFunction::covers(double x) const {
    const double slack = 1e-12 * std::max(1.0, std::max(std::abs(start_), std::abs(grid_end())));
    return x >= start_ - slack && x <= grid_end() + slack;
}

double TabulatedFunction::operator()(double x) const {
    if (!covers(x)) {
        throw domain_error("TabulatedFunction: x=" + std::to_string(x) + " outside [" + std::to_string(start_) +
                           ", " + std::to_string(grid_end()) + "]");
    }
    const std::size_t n = values_.size();
    if (n == 1) return values_[0];
    double u = (x - start_) / step_;
    u = std::clamp(u, 0.0, static_cast<double>(n - 1));
    std::size_t i = static_cast<std::size_t>(u);
    if (i >= n - 1) i = n - 2;
    const double t = u - static_cast<double>(i);
    switch (interp_) {
    case Interp::linear:
        return values_[i] + t * (values_[i + 1] - values_[i]);
    case Interp::cubic_monotone: {
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * values_[i] + h10 * step_ * slopes_[i] + h01 * values_[i + 1] + h11 * step_ * slopes_[i + 1];
    }
    case Interp::cubic: {
        if (n < 4) return values_[i] + t * (values_[i + 1] - values_[i]);
        std::size_t j = i == 0 ? 0 : i - 1;
        if (j + 3 > n - 1) j = n - 4;
        const double s = u - static_cast<double>(j);
        const double y0 = values_[j], y1 = values_[j + 1], y2 = values_[j + 2], y3 = values_[j + 3];
        return -y0 * (s - 1) * (s - 2) * (s - 3) / 6.0 + y1 * s * (s - 2) * (s - 3) / 2.0 -
               y2 * s * (s - 1) * (s - 3) / 2.0 + y3 * s * (s - 1) * (s - 2) / 6.0;
    }
    }
    return values_[i];
}

std::string interp_name(Interp interp) {
    switch (interp) {
    case Interp::linear: return "linear";
    case Interp::cubic_monotone: return "cubic-monotone";
    case Interp::cubic: return "cubic";
    }
    return "linear";
}

Interp interp_from_name(const std::string& name) {
    if (name == "linear") return Interp::linear;
    if (name == "cubic-monotone") return Interp::cubic_monotone;
    if (name == "cubic") return Interp::cubic;
    throw domain_error("unknown interpolation rule: " + name);
}

std::string header_path_for(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".json");
    return p.string();
}

std::string save_table(const TabulatedFunction& tab, const TableHeader& header, const std::string& csv_path,
                       const std::string& value_column) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot open " + csv_path + " for writing");
    csv << "s," << value_column << '\n';
    char buf[64];
    for (std::size_t i = 0; i < tab.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", tab.node(i));
        csv << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", tab.values()[i]);
        csv << buf << '\n';
    }
    if (!csv) throw std::runtime_error("write failed for " + csv_path);

    nlohmann::ordered_json j;
    j["alpha"] = header.alpha;
    j["theta"] = header.theta;
    j["step"] = header.step;
    j["method"] = header.method;
    const std::string hp = header_path_for(csv_path);
    std::ofstream js(hp);
    if (!js) throw std::runtime_error("cannot open " + hp + " for writing");
    js << j.dump(2) << '\n';
    return hp;
}

LoadedTable load_table(const std::string& csv_path, Interp interp) {
    std::ifstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot open " + csv_path);
    std::string line;
    std::getline(csv, line);
    std::vector<double> s, v;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed CSV row: " + line);
        s.push_back(std::stod(line.substr(0, comma)));
        v.push_back(std::stod(line.substr(comma + 1)));
    }
    if (s.empty()) throw std::runtime_error("empty table " + csv_path);
    const double step = s.size() > 1 ? (s.back() - s.front()) / static_cast<double>(s.size() - 1) : 1.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (std::abs(s[i] - s[i - 1] - step) > 1e-9 * std::max(1.0, std::abs(step)))
            throw std::runtime_error("non-uniform grid in " + csv_path);
    }
    LoadedTable out{TabulatedFunction(s.front(), step, std::move(v), interp), {}};
    std::ifstream js(header_path_for(csv_path));
    if (js) {
        auto j = nlohmann::json::parse(js);
        out.header.alpha = j.at("alpha").get<double>();
        out.header.theta = j.at("theta").get<double>();
        out.header.step = j.at("step").get<double>();
        out.header.method = j.at("method").get<std::string>();
    }
    return out;
}

} // namespace pdpp
