#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "grn/sigmoid.hpp"

using namespace grn;

namespace {

constexpr Orientation kInc = Orientation::Increasing;
constexpr Orientation kDec = Orientation::Decreasing;

double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double second_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Composite Simpson, fine enough for 1e-10 on these smooth integrands.
double simpson(const std::function<double(double)>& f, double a, double b) {
    const int n = 2000;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("logistic_eval golden values") {
    CHECK(logistic_eval({3.0, 1.0, kInc}, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(logistic_eval({3.0, 1.0, kInc}, 0.0) ==
          doctest::Approx(1.0 / (1.0 + std::exp(3.0))).epsilon(1e-14));
    CHECK(logistic_eval({3.0, 1.0, kInc}, 0.0) == doctest::Approx(0.0474).epsilon(1e-3));
    CHECK(logistic_eval({4.0, 3.0, kDec}, 0.0) == doctest::Approx(0.999994).epsilon(1e-5));
}

TEST_CASE("logistic_eval overflow safety") {
    const LogisticSpec inc{1.0, 0.0, kInc};
    CHECK(logistic_eval(inc, 800.0) == 1.0);
    CHECK(logistic_eval(inc, -800.0) == 0.0);
    CHECK(std::isfinite(logistic_eval({700.0, 0.0, kInc}, 1e4)));
    CHECK(std::isfinite(logistic_eval({700.0, 0.0, kDec}, -1e4)));
    CHECK(standard_logistic(0.0) == 0.5);
    CHECK(standard_logistic(710.0) == 1.0);
    CHECK(standard_logistic(-710.0) <= 1e-300); // subnormal tail, still finite
}

TEST_CASE("logistic spec validation") {
    CHECK_THROWS_AS(logistic_eval({0.0, 1.0, kInc}, 0.0), DomainError);
    CHECK_THROWS_AS(logistic_eval({-1.0, 1.0, kInc}, 0.0), DomainError);
}

TEST_CASE("logistic_derivative golden values and finite differences") {
    CHECK(logistic_derivative({3.0, 1.0, kInc}, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(logistic_derivative({2.0, 0.0, kDec}, 0.0) == doctest::Approx(-0.5).epsilon(1e-15));

    const LogisticSpec s{3.0, 1.0, kInc};
    CHECK(logistic_derivative(s, 0.0) == doctest::Approx(0.13553).epsilon(1e-4));
    const double fd = central_diff([&](double x) { return logistic_eval(s, x); }, 0.0, 1e-6);
    CHECK(logistic_derivative(s, 0.0) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("logistic derivative identity and bounds, random sweep") {
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> lam(0.1, 8.0), th(-3.0, 3.0), xd(-6.0, 6.0);
    for (int k = 0; k < 10000; ++k) {
        const Orientation o = (k % 2) ? kInc : kDec;
        const LogisticSpec s{lam(rng), th(rng), o};
        const double x = xd(rng);
        const double f = logistic_eval(s, x);
        const double sign = o == kInc ? 1.0 : -1.0;
        CHECK(std::fabs(logistic_derivative(s, x) - sign * s.steepness * f * (1.0 - f)) <
              1e-13);
        CHECK(std::fabs(logistic_derivative(s, x)) <= s.steepness / 4.0 + 1e-15);
        CHECK(std::fabs(logistic_second_derivative(s, x)) <=
              s.steepness * s.steepness * std::sqrt(3.0) / 18.0 + 1e-12);
    }
}

TEST_CASE("logistic derivative vs finite differences, random sweep") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> lam(0.2, 4.0), th(-2.0, 2.0), xd(-3.0, 3.0);
    for (int k = 0; k < 200; ++k) {
        const LogisticSpec s{lam(rng), th(rng), (k % 2) ? kInc : kDec};
        const double x = xd(rng);
        const double fd =
            central_diff([&](double u) { return logistic_eval(s, u); }, x, 1e-6);
        const double an = logistic_derivative(s, x);
        CHECK(an == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("logistic_second_derivative") {
    CHECK(logistic_second_derivative({2.7, 1.3, kInc}, 1.3) == 0.0);
    CHECK(logistic_second_derivative({5.0, -2.0, kDec}, -2.0) == 0.0);

    // Peak magnitude sqrt(3)/18 at f = (1 +- 1/sqrt(3))/2 for lambda = 1.
    const LogisticSpec unit{1.0, 0.0, kInc};
    const double x_peak = logistic_inverse(unit, 0.5 * (1.0 - 1.0 / std::sqrt(3.0)));
    CHECK(std::fabs(logistic_second_derivative(unit, x_peak)) ==
          doctest::Approx(std::sqrt(3.0) / 18.0).epsilon(1e-12));
    CHECK(std::sqrt(3.0) / 18.0 == doctest::Approx(0.0962).epsilon(1e-3));

    const LogisticSpec s{2.0, 1.0, kInc};
    const double fd = second_diff([&](double u) { return logistic_eval(s, u); }, 0.0, 1e-4);
    CHECK(logistic_second_derivative(s, 0.0) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("symmetry: increasing + decreasing = 1") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> lam(0.1, 10.0), th(-4.0, 4.0), xd(-8.0, 8.0);
    for (int k = 0; k < 2000; ++k) {
        const double l = lam(rng), t = th(rng), x = xd(rng);
        const double sum = logistic_eval({l, t, kInc}, x) + logistic_eval({l, t, kDec}, x);
        CHECK(std::fabs(sum - 1.0) <= 1e-15);
    }
}

TEST_CASE("logistic_inverse golden values and round trips") {
    CHECK(logistic_inverse({3.0, 1.0, kInc}, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(logistic_inverse({2.0, 5.0, kDec}, 0.5) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(logistic_inverse({3.0, 1.0, kInc}, 1.0 / (1.0 + std::exp(3.0))) ==
          doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(logistic_inverse({1.0, 0.0, kInc}, 0.0), DomainError);
    CHECK_THROWS_AS(logistic_inverse({1.0, 0.0, kInc}, 1.0), DomainError);
    CHECK_THROWS_AS(logistic_inverse({1.0, 0.0, kInc}, -0.2), DomainError);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> lam(0.2, 6.0), th(-2.0, 2.0), yd(1e-6, 1.0 - 1e-6);
    for (int k = 0; k < 2000; ++k) {
        const LogisticSpec s{lam(rng), th(rng), (k % 2) ? kInc : kDec};
        const double y = yd(rng);
        CHECK(logistic_eval(s, logistic_inverse(s, y)) == doctest::Approx(y).epsilon(1e-12));
        // inverse(eval(x)) over the +-30/lambda band. Rounding eval's output
        // to double costs ~eps/2 in y, which the inverse amplifies by
        // 1/|f'(x)| = 1/(lambda y (1-y)); near the band edges that
        // conditioning factor, not the algorithm, dominates the error.
        const double x = s.threshold + (yd(rng) - 0.5) * 60.0 / s.steepness;
        const double f = logistic_eval(s, x);
        const double cond = 1.0 / (s.steepness * f * (1.0 - f));
        CHECK(std::fabs(logistic_inverse(s, f) - x) <
              1e-9 * (1.0 + std::fabs(x)) + 4.0 * 1.1e-16 * cond);
    }
}

TEST_CASE("logistic_antiderivative") {
    CHECK(logistic_antiderivative({1.0, 0.0, kInc}, 0.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(logistic_antiderivative({1.0, 0.0, kInc}, 30.0) == doctest::Approx(30.0).epsilon(1e-9));
    CHECK(logistic_antiderivative({1.0, 0.0, kInc}, -700.0) == doctest::Approx(0.0));

    const LogisticSpec s{2.0, 1.0, kInc};
    const double quad = simpson([&](double x) { return logistic_eval(s, x); }, -3.0, 3.0);
    CHECK(logistic_antiderivative(s, 3.0) - logistic_antiderivative(s, -3.0) ==
          doctest::Approx(quad).epsilon(1e-8));

    // FD derivative of the antiderivative recovers the function on a grid;
    // the antiderivative is nondecreasing for increasing orientation.
    double prev = -1.0;
    for (double x = -4.0; x <= 4.0; x += 0.25) {
        const double fd = central_diff(
            [&](double u) { return logistic_antiderivative(s, u); }, x, 1e-5);
        CHECK(fd == doctest::Approx(logistic_eval(s, x)).epsilon(1e-8));
        const double v = logistic_antiderivative(s, x);
        CHECK(v >= prev);
        prev = v;
    }

    // Decreasing orientation: anchored at +inf, derivative still matches.
    const LogisticSpec d{1.5, 0.5, kDec};
    const double fd = central_diff(
        [&](double u) { return logistic_antiderivative(d, u); }, 0.2, 1e-5);
    CHECK(fd == doctest::Approx(logistic_eval(d, 0.2)).epsilon(1e-8));
}

TEST_CASE("logistic_taylor_midpoint") {
    CHECK(logistic_taylor_midpoint({3.0, 4.0, kInc}, 4.0, 1) == doctest::Approx(0.5));
    CHECK(logistic_taylor_midpoint({1.0, 0.0, kInc}, 0.1, 5) ==
          doctest::Approx(logistic_eval({1.0, 0.0, kInc}, 0.1)).epsilon(1e-7));
    // order-5 residual below order-3 residual near the midpoint
    const LogisticSpec s{1.0, 0.0, kInc};
    const double exact = logistic_eval(s, 0.5);
    const double r3 = std::fabs(logistic_taylor_midpoint(s, 0.5, 3) - exact);
    const double r5 = std::fabs(logistic_taylor_midpoint(s, 0.5, 5) - exact);
    CHECK(r5 < r3);
    CHECK_THROWS_AS(logistic_taylor_midpoint(s, 0.1, 2), UnsupportedError);
    CHECK_THROWS_AS(logistic_taylor_midpoint(s, 0.1, 7), UnsupportedError);
}

TEST_CASE("logistic_linear_origin") {
    const LogisticSpec s{3.0, 1.0, kInc};
    CHECK(logistic_linear_origin(s, 0.0) == doctest::Approx(0.0474).epsilon(1e-3));
    CHECK(logistic_linear_origin(s, 0.0) ==
          doctest::Approx(logistic_eval(s, 0.0)).epsilon(1e-14));
    CHECK(logistic_linear_origin(s, 0.01) ==
          doctest::Approx(logistic_eval(s, 0.01)).epsilon(1e-4));
    CHECK_THROWS_AS(logistic_linear_origin({3.0, 1.0, kDec}, 0.0), UnsupportedError);
    CHECK_THROWS_AS(logistic_linear_origin({0.0, 1.0, kInc}, 0.0), DomainError);
}

TEST_CASE("scaled_logistic_eval") {
    CHECK(scaled_logistic_eval({4.0, 3.0, kDec}, 0.0) == 1.0);
    CHECK(scaled_logistic_eval({1.0, 2.0, kDec}, 0.0) == 1.0);
    CHECK(logistic_eval({1.0, 2.0, kDec}, 0.0) == doctest::Approx(0.8808).epsilon(1e-3));
    CHECK(1.0 + std::exp(-6.0) == doctest::Approx(1.0025).epsilon(1e-3));
    CHECK(scaled_logistic_eval({3.0, 2.0, kDec}, 1.0) ==
          doctest::Approx((1.0 + std::exp(-6.0)) * logistic_eval({3.0, 2.0, kDec}, 1.0))
              .epsilon(1e-14));
    // strictly decreasing and positive
    double prev = 2.0;
    for (double x = 0.0; x <= 10.0; x += 0.5) {
        const double v = scaled_logistic_eval({4.0, 3.0, kDec}, x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(scaled_logistic_eval({4.0, 3.0, kInc}, 0.0), UnsupportedError);
}

TEST_CASE("hill_eval") {
    CHECK(hill_eval({3.0, 1.0, kInc}, 0.0) == 0.0);   // bit-exact boundary
    CHECK(hill_eval({3.0, 1.0, kDec}, 0.0) == 1.0);   // bit-exact boundary
    CHECK(hill_eval({4.0, 3.0, kDec}, 3.0) == 0.5);
    CHECK(hill_eval({3.0, 1.0, kInc}, 1.0) == 0.5);
    // x = 0.01, n = 3: exact value 1e-6/(1e-6 + 1) ~ 1e-6 (the closed form is
    // authoritative; looser order-of-magnitude quotes round it differently).
    CHECK(hill_eval({3.0, 1.0, kInc}, 0.01) == doctest::Approx(1e-6).epsilon(1e-4));
    CHECK_THROWS_AS(hill_eval({3.0, 1.0, kInc}, -0.5), DomainError);
    CHECK_THROWS_AS(hill_eval({0.0, 1.0, kInc}, 0.5), DomainError);
    CHECK_THROWS_AS(hill_eval({3.0, 0.0, kInc}, 0.5), DomainError);
}

TEST_CASE("hill_derivative") {
    CHECK(hill_derivative({3.0, 1.0, kInc}, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(hill_derivative({2.0, 2.0, kInc}, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::fabs(hill_derivative({0.5, 1.0, kInc}, 1e-8)) > 1e3);

    // x = 0 limits: 0 for n > 1, 1/theta for n = 1, singularity otherwise.
    CHECK(hill_derivative({3.0, 1.0, kInc}, 0.0) == 0.0);
    CHECK(hill_derivative({1.0, 4.0, kInc}, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
    try {
        hill_derivative({0.5, 1.0, kInc}, 0.0);
        CHECK(false);
    } catch (const SingularityError& e) {
        CHECK(e.asymptotic_exponent == doctest::Approx(-0.5));
    }

    // decreasing orientation mirrors the sign
    CHECK(hill_derivative({3.0, 1.0, kDec}, 1.0) == doctest::Approx(-0.75).epsilon(1e-14));

    // finite-difference agreement away from 0
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> nd(0.5, 6.0), td(0.5, 4.0), xd(0.2, 8.0);
    for (int k = 0; k < 200; ++k) {
        const HillSpec h{nd(rng), td(rng), (k % 2) ? kInc : kDec};
        const double x = xd(rng);
        const double fd = central_diff([&](double u) { return hill_eval(h, u); }, x, 1e-6);
        CHECK(hill_derivative(h, x) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("hill_inverse") {
    CHECK(hill_inverse({2.0, 1.0, kInc}, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hill_inverse({2.0, 3.0, kInc}, 0.8) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK_THROWS_AS(hill_inverse({3.0, 1.0, kInc}, 1.0), DomainError);
    CHECK_THROWS_AS(hill_inverse({3.0, 1.0, kInc}, 0.0), DomainError);

    std::mt19937 rng(123);
    std::uniform_real_distribution<double> nd(0.5, 5.0), td(0.5, 4.0), yd(0.01, 0.99);
    for (int k = 0; k < 1000; ++k) {
        const HillSpec h{nd(rng), td(rng), (k % 2) ? kInc : kDec};
        const double y = yd(rng);
        CHECK(hill_eval(h, hill_inverse(h, y)) == doctest::Approx(y).epsilon(1e-10));
    }
}

TEST_CASE("hill_antiderivative_closed") {
    CHECK(hill_antiderivative_closed({2.0, 1.0, kInc}, 1.0) ==
          doctest::Approx(1.0 - std::atan(1.0)).epsilon(1e-12));
    CHECK(hill_antiderivative_closed({1.0, 1.0, kInc}, 0.0) == doctest::Approx(0.0));
    CHECK(hill_antiderivative_closed({2.0, 1.0, kInc}, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(hill_antiderivative_closed({3.0, 1.0, kInc}, 1.0), UnsupportedError);
    CHECK_THROWS_AS(hill_antiderivative_closed({2.0, 1.0, kDec}, 1.0), UnsupportedError);

    // quadrature cross-check and FD-derivative check for both cases
    for (double n : {1.0, 2.0}) {
        const HillSpec h{n, 1.5, kInc};
        const double quad = simpson([&](double x) { return hill_eval(h, x); }, 0.0, 2.0);
        CHECK(hill_antiderivative_closed(h, 2.0) == doctest::Approx(quad).epsilon(1e-8));
        for (double x = 0.5; x <= 3.0; x += 0.5) {
            const double fd = central_diff(
                [&](double u) { return hill_antiderivative_closed(h, u); }, x, 1e-5);
            CHECK(fd == doctest::Approx(hill_eval(h, x)).epsilon(1e-7));
        }
    }
}

TEST_CASE("match_steepness") {
    const LogisticSpec a = match_steepness({4.0, 3.0, kInc});
    CHECK(a.steepness == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(a.threshold == 3.0);
    CHECK(a.orientation == kInc);
    CHECK(match_steepness({3.0, 2.0, kDec}).steepness == doctest::Approx(1.5));
    CHECK(match_steepness({10.0, 2.0, kInc}).steepness == doctest::Approx(5.0));

    // slopes agree exactly at the threshold: both n/(4 theta) in magnitude
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> nd(0.5, 8.0), td(0.3, 5.0);
    for (int k = 0; k < 500; ++k) {
        const HillSpec h{nd(rng), td(rng), (k % 2) ? kInc : kDec};
        const LogisticSpec l = match_steepness(h);
        CHECK(std::fabs(logistic_derivative(l, h.threshold)) ==
              doctest::Approx(std::fabs(hill_derivative(h, h.threshold))).epsilon(1e-14));
        CHECK(std::fabs(hill_derivative(h, h.threshold)) ==
              doctest::Approx(h.coefficient / (4.0 * h.threshold)).epsilon(1e-14));
    }
}

TEST_CASE("log_input_equivalence") {
    CHECK(log_input_equivalence({3.0, 1.0, kInc}, 1.0) == 0.0);
    CHECK(log_input_equivalence({2.0, 5.0, kInc}, 10.0) <= 1e-12);
    CHECK(log_input_equivalence({1.39, 2.0, kInc}, 0.3) <= 1e-12);
    CHECK_THROWS_AS(log_input_equivalence({3.0, 1.0, kInc}, 0.0), DomainError);
    CHECK_THROWS_AS(log_input_equivalence({3.0, 1.0, kInc}, -1.0), DomainError);

    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> nd(0.3, 6.0), td(0.2, 5.0);
    std::uniform_real_distribution<double> lx(-4.0, 4.0);
    for (int k = 0; k < 1000; ++k) {
        const HillSpec h{nd(rng), td(rng), (k % 2) ? kInc : kDec};
        const double x = h.threshold * std::exp(lx(rng));
        CHECK(log_input_equivalence(h, x) <= 1e-12);
    }
}

TEST_CASE("samuilik form") {
    const SamuilikSpec s{4.0 / 3.0, -1.0, 3.0};
    CHECK(samuilik_repression_eval(s, 0.0) ==
          doctest::Approx(1.0 / (1.0 + std::exp(4.0))).epsilon(1e-14));
    CHECK(samuilik_repression_eval(s, 0.0) == doctest::Approx(0.018).epsilon(2e-2));
    CHECK(samuilik_critical_point(s) == doctest::Approx(-3.0));
    CHECK(samuilik_critical_point({1.0, 2.0, 4.0}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(samuilik_critical_point({1.0, 0.0, 4.0}), DomainError);
    // decreasing in x when w < 0: bounded by the x = 0 value for x >= 0
    for (double x = 0.0; x < 10.0; x += 1.0)
        CHECK(samuilik_repression_eval(s, x) <= samuilik_repression_eval(s, 0.0) + 1e-15);
}

TEST_CASE("basal_rate") {
    CHECK(basal_rate({3.0, 1.0, kInc}) == doctest::Approx(0.0474).epsilon(1e-3));
    CHECK(basal_rate({2.0, 2.5, kInc}) ==
          doctest::Approx(1.0 / (1.0 + std::exp(5.0))).epsilon(1e-14));
    CHECK(basal_rate({1.0, 2.0, kDec}) == doctest::Approx(0.8808).epsilon(1e-3));
    // depends only on the product lambda*theta
    CHECK(basal_rate({6.0, 0.5, kInc}) == doctest::Approx(basal_rate({3.0, 1.0, kInc})));
}

TEST_CASE("sigmoid variant dispatch") {
    const SigmoidSpec l = LogisticSpec{2.0, 1.0, kInc};
    const SigmoidSpec h = HillSpec{2.0, 1.0, kInc};
    CHECK(sigmoid_eval(l, 1.0) == doctest::Approx(0.5));
    CHECK(sigmoid_eval(h, 1.0) == doctest::Approx(0.5));
    CHECK(sigmoid_derivative(l, 1.0) == doctest::Approx(0.5));
    CHECK(sigmoid_derivative(h, 1.0) == doctest::Approx(0.5));
}
