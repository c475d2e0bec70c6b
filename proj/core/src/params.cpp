#include "pdpp/params.hpp"

#include <cmath>
#include <sstream>

#include "pdpp/errors.hpp"

namespace pdpp {

PDParams validate_params(double alpha, double theta) {
    if (!std::isfinite(alpha) || !std::isfinite(theta))
        throw domain_error("PD parameters must be finite");
    if (alpha < 0.0) throw domain_error("alpha must satisfy 0 <= alpha (got " + std::to_string(alpha) + ")");
    if (!(alpha < 1.0)) throw domain_error("alpha must satisfy alpha < 1 (got " + std::to_string(alpha) + ")");
    if (!(theta > -alpha))
        throw domain_error("theta must satisfy theta > -alpha (got theta=" + std::to_string(theta) +
                           ", alpha=" + std::to_string(alpha) + ")");
    return PDParams{alpha, theta};
}

std::string to_string(const PDParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "(alpha=" << p.alpha << ", theta=" << p.theta << ")";
    return os.str();
}

} // namespace pdpp
