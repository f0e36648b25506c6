#pragma once

#include <variant>

#include "grn/errors.hpp"

namespace grn {

enum class Orientation { Increasing, Decreasing };

// Logistic response 1/(1 + e^{-sigma*lambda*(x-theta)}), sigma = +1 increasing
// (activation), -1 decreasing (repression).
struct LogisticSpec {
    double steepness = 1.0; // lambda > 0
    double threshold = 0.0; // theta
    Orientation orientation = Orientation::Increasing;

    void validate() const;
};

// Hill response x^n/(x^n + theta^n) (increasing) or theta^n/(x^n + theta^n).
struct HillSpec {
    double coefficient = 1.0; // n > 0
    double threshold = 1.0;   // theta > 0
    Orientation orientation = Orientation::Increasing;

    void validate() const;
};

// Weighted-sum comparison form 1/(1 + e^{-mu*(w*x - theta)}).
struct SamuilikSpec {
    double steepness = 1.0; // mu > 0
    double weight = 1.0;    // w, may be negative
    double threshold = 0.0; // theta

    void validate() const;
};

using SigmoidSpec = std::variant<LogisticSpec, HillSpec>;

// Plain 1/(1+e^{-s}), overflow-safe for any finite s.
double standard_logistic(double s);

double logistic_eval(const LogisticSpec& spec, double x);
double logistic_derivative(const LogisticSpec& spec, double x);
double logistic_second_derivative(const LogisticSpec& spec, double x);
double logistic_inverse(const LogisticSpec& spec, double y);

// Antiderivative of logistic_eval. Increasing form anchored so the value
// tends to 0 as x -> -inf; decreasing form mirrors (0 as x -> +inf).
double logistic_antiderivative(const LogisticSpec& spec, double x);

// Series about the midpoint: 1/2 + (l/4)s - (l^3/48)s^3 + (l^5/480)s^5,
// s = x - theta, truncated at the requested order (1, 3 or 5).
double logistic_taylor_midpoint(const LogisticSpec& spec, double x, int order);

// Affine approximation anchored at x = 0 (increasing orientation only).
double logistic_linear_origin(const LogisticSpec& spec, double x);

// (1 + e^{-lambda*theta}) * f^-(x): exactly 1 at x = 0 (decreasing only).
double scaled_logistic_eval(const LogisticSpec& spec, double x);

double hill_eval(const HillSpec& spec, double x);
double hill_derivative(const HillSpec& spec, double x);
double hill_inverse(const HillSpec& spec, double y);

// Closed-form antiderivative, n in {1, 2}, increasing orientation,
// anchored to 0 at x = 0.
double hill_antiderivative_closed(const HillSpec& spec, double x);

// Slope-matched logistic: lambda = n/theta, same threshold and orientation.
LogisticSpec match_steepness(const HillSpec& hill);

// |standard_logistic(sigma*n*ln(x/theta)) - hill_eval(x)|; identically small.
double log_input_equivalence(const HillSpec& hill, double x);

double samuilik_repression_eval(const SamuilikSpec& spec, double x);
double samuilik_critical_point(const SamuilikSpec& spec);

// Value at x = 0: 1/(1+e^{lambda*theta}) increasing, 1/(1+e^{-lambda*theta})
// decreasing. Depends on the product lambda*theta only.
double basal_rate(const LogisticSpec& spec);

// Generic dispatch over the variant (used by the network model).
double sigmoid_eval(const SigmoidSpec& spec, double x);
double sigmoid_derivative(const SigmoidSpec& spec, double x);

} // namespace grn
