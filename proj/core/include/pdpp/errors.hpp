#pragma once

#include <stdexcept>
#include <string>

namespace pdpp {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation point touches the principal-branch cut of a complex power or logarithm.
class branch_cut_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// A numerical procedure failed to reach its target accuracy or produced an inconsistent value.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class quadrature_error : public numerical_error {
public:
    quadrature_error(const std::string& what, double estimate, double error_estimate)
        : numerical_error(what), estimate_(estimate), error_(error_estimate) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

} // namespace pdpp
