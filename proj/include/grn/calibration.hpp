#pragma once

#include "grn/dynamics.hpp"
#include "grn/network.hpp"

namespace grn {

// Additive linear activation g + g_cross * regulator of the reference model.
struct LinearActivationSpec {
    double basal = 1.0; // g > 0 (concentration/time)
    double cross = 1.0; // g_cross > 0

    void validate() const;
};

enum class CalibrationStrategy { BiologicalThreshold, GeneralTheta, WeightedForm };

struct CalibrationResult {
    double kappa = 0.0;
    double lambda = 0.0;
    double theta = 0.0;
    CalibrationStrategy strategy = CalibrationStrategy::BiologicalThreshold;
};

// Threshold at basal == cross-activation (theta = g/g_cross):
// kappa = 4g, lambda = (g_cross/g) ln 3 (so lambda*theta = ln 3 exactly).
CalibrationResult derive_activation_params(const LinearActivationSpec& spec);

// Arbitrary threshold: kappa = 2(g + g_cross*theta),
// lambda = (1/theta) ln(1 + 2 g_cross theta / g).
CalibrationResult derive_activation_params_general(const LinearActivationSpec& spec,
                                                   double theta);

// Weighted-input form (argument g_cross * x): kappa = 4g, lambda = ln3/g,
// theta = g. Related to derive_activation_params by the lambda*w, theta/w
// rescaling with w = g_cross.
CalibrationResult derive_weighted_params(const LinearActivationSpec& spec);

// The reference two-gene system: linear activation times decreasing-logistic
// self-repression. Kept separate from Network (which is purely sigmoidal);
// this is the fit/validation target for the calibration formulas.
struct ReferenceTwoGene {
    LinearActivationSpec act_a; // g_A, g_AB (input B)
    LinearActivationSpec act_b; // g_B, g_BA (input A)
    double gamma_a = 1.0, gamma_b = 1.0;
    double lambda_rep_a = 1.0, lambda_rep_b = 1.0; // lambda_3, lambda_4
    double a0 = 1.0, b0 = 1.0;                     // self-repression thresholds

    void validate() const;
    Rhs rhs() const; // dA, dB for the generic integrator
};

// Equilibrium (A*, B*) of the reference system by damped Newton; the
// steady-state threshold-selection strategy feeds these into
// derive_activation_params_general.
std::pair<double, double> reference_steady_state(const ReferenceTwoGene& sys);

// ---- trajectory fitting -------------------------------------------------

struct ParamRef {
    enum class Kind { GeneKappa, GeneGamma, EdgeSteepness, EdgeTheta };
    Kind kind = Kind::GeneKappa;
    std::size_t gene = 0;
    std::size_t edge = 0; // for the edge kinds
};

struct FitProblem {
    Network network; // template; free parameters get overwritten per candidate
    std::vector<ParamRef> free_params;
    Trajectory data;                   // observations at data.times
    std::vector<double> weights;       // optional, per component
    IntegratorConfig integrator{1e-8, 1e-10, 1.0, 0.0, 0.0, true};
};

struct FitConfig {
    std::size_t max_iterations = 100;
    double sse_improvement_tol = 1e-8;
    double gradient_tol = 1e-8;
    double fd_step = 1e-4; // relative, central differences
};

struct FitResult {
    std::vector<double> parameters;
    double sse = 0.0;
    std::size_t iterations = 0;
};

// Gauss-Newton with Levenberg damping; residuals from simulating the
// template and sampling at the data times; positivity enforced by working
// in log-parameter space.
FitResult fit_least_squares(const FitProblem& problem,
                            const std::vector<double>& initial_guess,
                            const FitConfig& config = {});

} // namespace grn
