#pragma once

#include <string>

namespace pdpp {

/// Parameter pair of PD(alpha, theta): 0 <= alpha < 1 and theta > -alpha.
struct PDParams {
    double alpha = 0.0;
    double theta = 1.0;

    /// The shifted pair (alpha, theta + k alpha).
    PDParams shifted(double k) const { return PDParams{alpha, theta + k * alpha}; }
};

/// Returns the validated pair or throws pdpp::domain_error naming the violated constraint.
PDParams validate_params(double alpha, double theta);

std::string to_string(const PDParams& p);

} // namespace pdpp
