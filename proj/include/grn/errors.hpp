#pragma once

#include <stdexcept>
#include <string>

namespace grn {

// Bad parameter values, out-of-range arguments, malformed input files.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation exists but not for this configuration (Hill edges in a bound
// computation, unsupported Taylor order, ...).
struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Derivative singularity at x = 0 for non-integer Hill coefficients.
// Carries the asymptotic exponent n-1 of h'(x) ~ (n/theta^n) x^{n-1}.
struct SingularityError : std::domain_error {
    SingularityError(const std::string& what, double exponent)
        : std::domain_error(what), asymptotic_exponent(exponent) {}
    double asymptotic_exponent;
};

// Solver did not converge / step size underflow / non-finite state.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace grn
