#pragma once

#include <optional>
#include <vector>

#include "grn/network.hpp"

namespace grn {

enum class Classification { StableNode, StableSpiral, Saddle, Unstable, Undetermined };

const char* to_string(Classification c);

struct EquilibriumReport {
    std::vector<double> state;
    double residual_norm = 0.0;
    // Populated for 2-gene networks.
    double trace = 0.0;
    double determinant = 0.0;
    double discriminant = 0.0;
    Classification classification = Classification::Undetermined;
    std::size_t iterations = 0;
};

struct FixedPoint {
    double x = 0.0;
    bool stable = false;
};

enum class BistabilityRegime { MonostableLow, Bistable, MonostableHigh };

struct BistabilityReport {
    double alpha = 0.0; // loop gain (0 when only the critical band was asked for)
    std::vector<FixedPoint> fixed_points;
    std::optional<double> alpha_crit_lower;
    std::optional<double> alpha_crit_upper;
    std::optional<BistabilityRegime> regime;
    // Saddle-node details (logistic case): roots z of e^z - z - (lambda*theta - 1) = 0.
    std::vector<double> tangency_z;
};

struct HopfReport {
    double equilibrium = 0.0; // N*
    double beta = 0.0;        // kappa*lambda*f*(1-f*)
    double gamma = 0.0;
    double omega = 0.0;                  // sqrt(beta^2 - gamma^2), 0 when no Hopf
    std::vector<double> critical_delays; // tau_c(k), k = 0..k_max; empty when beta <= gamma
};

// Damped Newton with the analytic Jacobian; iterates projected into the
// invariant box. 2-gene networks get trace/det classification, larger ones
// eigenvalue classification (Undetermined when a real part is within
// 10*tol of zero).
EquilibriumReport find_equilibrium(const Network& net, const std::vector<double>& guess,
                                   double tol = 1e-10);

// All roots of x - alpha*h(x) on [0, alpha]: sign-change bracketing on a
// 1e4-point grid refined by bisection; stability from 1 - alpha*h'(x*).
BistabilityReport autoreg_fixed_points(const SigmoidSpec& response, double alpha);

// Saddle-node pair for Hill autoregulation: x_crit = c*(n-1)^{1/n},
// alpha_crit = n*c/(n-1)^{(n-1)/n}. Requires n > 1.
std::pair<double, double> hill_alpha_crit(double n, double c);

// Tangency roots of the logistic autoregulation transcendental; populates
// alpha_crit bounds, or leaves them empty when no bistable band exists.
BistabilityReport logistic_saddle_nodes(double lambda, double theta);

Classification classify_2x2(double trace, double det);

// Unique root of kappa*f(N) - gamma*N on [0, kappa/gamma], bisected to 1e-12.
double scalar_dde_equilibrium(double kappa, double gamma, const LogisticSpec& response);

// Hopf analysis of dN/dt = -gamma*N + kappa*f(N(t - tau)) around N*.
HopfReport hopf_critical_delay(double kappa, double gamma, const LogisticSpec& response,
                               int k_max);

// Core formulas for given gamma, beta (the linearization coefficient);
// exposed so the characteristic equation can be probed directly.
HopfReport hopf_from_beta(double gamma, double beta, int k_max);

} // namespace grn
