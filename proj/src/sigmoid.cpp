#include "grn/sigmoid.hpp"

#include <cmath>

namespace grn {

namespace {

double sign_of(Orientation o) {
    return o == Orientation::Increasing ? 1.0 : -1.0;
}

// softplus(s) = ln(1+e^s) without overflow.
double softplus(double s) {
    if (s > 35.0) return s + std::log1p(std::exp(-s));
    return std::log1p(std::exp(s));
}

} // namespace

void LogisticSpec::validate() const {
    if (!(steepness > 0.0) || !std::isfinite(steepness) || !std::isfinite(threshold))
        throw DomainError("LogisticSpec: steepness must be positive and finite");
}

void HillSpec::validate() const {
    if (!(coefficient > 0.0) || !(threshold > 0.0) ||
        !std::isfinite(coefficient) || !std::isfinite(threshold))
        throw DomainError("HillSpec: coefficient and threshold must be positive");
}

void SamuilikSpec::validate() const {
    if (!(steepness > 0.0) || !std::isfinite(steepness) ||
        !std::isfinite(weight) || !std::isfinite(threshold))
        throw DomainError("SamuilikSpec: steepness must be positive and finite");
}

double standard_logistic(double s) {
    // Only ever exponentiate a non-positive argument.
    if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

double logistic_eval(const LogisticSpec& spec, double x) {
    spec.validate();
    return standard_logistic(sign_of(spec.orientation) * spec.steepness * (x - spec.threshold));
}

double logistic_derivative(const LogisticSpec& spec, double x) {
    spec.validate();
    const double s = spec.steepness * (x - spec.threshold);
    // f(s)*(1-f(s)) = f(s)*f(-s): evaluate each factor on its stable branch,
    // so the product stays accurate in both tails.
    const double p = standard_logistic(s) * standard_logistic(-s);
    return sign_of(spec.orientation) * spec.steepness * p;
}

double logistic_second_derivative(const LogisticSpec& spec, double x) {
    spec.validate();
    const double s = sign_of(spec.orientation) * spec.steepness * (x - spec.threshold);
    if (x == spec.threshold) return 0.0;
    const double f = standard_logistic(s);
    const double p = f * standard_logistic(-s);
    // d2/dx2 of f(sigma*lambda*(x-theta)) = lambda^2 f(1-f)(1-2f); the sigma^2
    // cancels, so orientation only enters through f itself.
    return spec.steepness * spec.steepness * p * (1.0 - 2.0 * f);
}

double logistic_inverse(const LogisticSpec& spec, double y) {
    spec.validate();
    if (!(y > 0.0) || !(y < 1.0))
        throw DomainError("logistic_inverse: y must lie in (0, 1)");
    const double logit = std::log(y / (1.0 - y));
    return spec.threshold + sign_of(spec.orientation) * logit / spec.steepness;
}

double logistic_antiderivative(const LogisticSpec& spec, double x) {
    spec.validate();
    const double s = spec.steepness * (x - spec.threshold);
    if (spec.orientation == Orientation::Increasing)
        return softplus(s) / spec.steepness;
    return -softplus(-s) / spec.steepness;
}

double logistic_taylor_midpoint(const LogisticSpec& spec, double x, int order) {
    spec.validate();
    if (order != 1 && order != 3 && order != 5)
        throw UnsupportedError("logistic_taylor_midpoint: order must be 1, 3 or 5");
    const double l = spec.steepness;
    const double s = sign_of(spec.orientation) * (x - spec.threshold);
    double v = 0.5 + (l / 4.0) * s;
    if (order >= 3) v -= (l * l * l / 48.0) * s * s * s;
    if (order >= 5) v += (l * l * l * l * l / 480.0) * s * s * s * s * s;
    return v;
}

double logistic_linear_origin(const LogisticSpec& spec, double x) {
    spec.validate();
    if (spec.orientation != Orientation::Increasing)
        throw UnsupportedError("logistic_linear_origin: increasing orientation required");
    const double f0 = basal_rate(spec);
    // slope = lambda e^{lt}/(1+e^{lt})^2 = lambda f0 (1-f0), with 1-f0
    // evaluated on its own stable branch.
    const double slope =
        spec.steepness * f0 * standard_logistic(spec.steepness * spec.threshold);
    return f0 + slope * x;
}

double scaled_logistic_eval(const LogisticSpec& spec, double x) {
    spec.validate();
    if (spec.orientation != Orientation::Decreasing)
        throw UnsupportedError("scaled_logistic_eval: decreasing orientation required");
    const double lt = spec.steepness * spec.threshold;
    const double s = spec.steepness * (x - spec.threshold);
    // (1+e^{-lt}) / (1+e^{s}); at x = 0, s = -lt bit-exactly, so the ratio
    // is exactly 1. For large positive s scale both sides by e^{-s}.
    const double num = 1.0 + std::exp(-lt);
    if (s <= 0.0) return num / (1.0 + std::exp(s));
    const double es = std::exp(-s);
    return (num * es) / (es + 1.0);
}

double hill_eval(const HillSpec& spec, double x) {
    spec.validate();
    if (x < 0.0) throw DomainError("hill_eval: x must be nonnegative");
    const bool incr = spec.orientation == Orientation::Increasing;
    if (x == 0.0) return incr ? 0.0 : 1.0; // boundary values bit-exact
    // Form the ratio with the smaller power in the numerator.
    if (x <= spec.threshold) {
        const double r = std::pow(x / spec.threshold, spec.coefficient);
        return incr ? r / (1.0 + r) : 1.0 / (1.0 + r);
    }
    const double r = std::pow(spec.threshold / x, spec.coefficient);
    return incr ? 1.0 / (1.0 + r) : r / (1.0 + r);
}

double hill_derivative(const HillSpec& spec, double x) {
    spec.validate();
    if (x < 0.0) throw DomainError("hill_derivative: x must be nonnegative");
    const double n = spec.coefficient;
    const double sgn = sign_of(spec.orientation);
    if (x == 0.0) {
        if (std::floor(n) != n)
            throw SingularityError(
                "hill_derivative: derivative diverges at x = 0 for non-integer n",
                n - 1.0);
        if (n > 1.0) return 0.0;
        return sgn / spec.threshold; // n = 1 limit
    }
    // n theta^n x^{n-1} / (theta^n + x^n)^2, computed via the bounded pieces
    // h(x) and 1-h(x): h'(x) = n/x * h * (1-h) in magnitude.
    const HillSpec incr{n, spec.threshold, Orientation::Increasing};
    const double h = hill_eval(incr, x);
    return sgn * (n / x) * h * (1.0 - h);
}

double hill_inverse(const HillSpec& spec, double y) {
    spec.validate();
    if (!(y > 0.0) || !(y < 1.0))
        throw DomainError("hill_inverse: y must lie in (0, 1)");
    const double odds =
        spec.orientation == Orientation::Increasing ? y / (1.0 - y) : (1.0 - y) / y;
    return spec.threshold * std::pow(odds, 1.0 / spec.coefficient);
}

double hill_antiderivative_closed(const HillSpec& spec, double x) {
    spec.validate();
    if (spec.orientation != Orientation::Increasing)
        throw UnsupportedError("hill_antiderivative_closed: increasing orientation required");
    if (x < 0.0) throw DomainError("hill_antiderivative_closed: x must be nonnegative");
    const double t = spec.threshold;
    if (spec.coefficient == 1.0) return x - t * std::log1p(x / t);
    if (spec.coefficient == 2.0) return x - t * std::atan(x / t);
    throw UnsupportedError("hill_antiderivative_closed: coefficient must be 1 or 2");
}

LogisticSpec match_steepness(const HillSpec& hill) {
    hill.validate();
    return LogisticSpec{hill.coefficient / hill.threshold, hill.threshold,
                        hill.orientation};
}

double log_input_equivalence(const HillSpec& hill, double x) {
    hill.validate();
    if (!(x > 0.0)) throw DomainError("log_input_equivalence: x must be positive");
    const double s = sign_of(hill.orientation) * hill.coefficient *
                     std::log(x / hill.threshold);
    return std::fabs(standard_logistic(s) - hill_eval(hill, x));
}

double samuilik_repression_eval(const SamuilikSpec& spec, double x) {
    spec.validate();
    return standard_logistic(spec.steepness * (spec.weight * x - spec.threshold));
}

double samuilik_critical_point(const SamuilikSpec& spec) {
    spec.validate();
    if (spec.weight == 0.0)
        throw DomainError("samuilik_critical_point: undefined for zero weight");
    return spec.threshold / spec.weight;
}

double basal_rate(const LogisticSpec& spec) {
    spec.validate();
    return standard_logistic(-sign_of(spec.orientation) * spec.steepness *
                             spec.threshold);
}

double sigmoid_eval(const SigmoidSpec& spec, double x) {
    if (const auto* l = std::get_if<LogisticSpec>(&spec)) return logistic_eval(*l, x);
    return hill_eval(std::get<HillSpec>(spec), x);
}

double sigmoid_derivative(const SigmoidSpec& spec, double x) {
    if (const auto* l = std::get_if<LogisticSpec>(&spec))
        return logistic_derivative(*l, x);
    return hill_derivative(std::get<HillSpec>(spec), x);
}

} // namespace grn
