#include "grn/calibration.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace grn {

void LinearActivationSpec::validate() const {
    if (!(basal > 0.0) || !(cross > 0.0) || !std::isfinite(basal) || !std::isfinite(cross))
        throw DomainError("LinearActivationSpec: basal and cross must be positive");
}

CalibrationResult derive_activation_params(const LinearActivationSpec& spec) {
    spec.validate();
    CalibrationResult r;
    r.strategy = CalibrationStrategy::BiologicalThreshold;
    r.kappa = 4.0 * spec.basal;
    r.theta = spec.basal / spec.cross;
    r.lambda = (spec.cross / spec.basal) * std::log(3.0);
    return r;
}

CalibrationResult derive_activation_params_general(const LinearActivationSpec& spec,
                                                   double theta) {
    spec.validate();
    if (!(theta > 0.0)) throw DomainError("derive_activation_params_general: theta > 0");
    CalibrationResult r;
    r.strategy = CalibrationStrategy::GeneralTheta;
    r.kappa = 2.0 * (spec.basal + spec.cross * theta);
    r.theta = theta;
    r.lambda = std::log1p(2.0 * spec.cross * theta / spec.basal) / theta;
    return r;
}

CalibrationResult derive_weighted_params(const LinearActivationSpec& spec) {
    spec.validate();
    CalibrationResult r;
    r.strategy = CalibrationStrategy::WeightedForm;
    r.kappa = 4.0 * spec.basal;
    r.lambda = std::log(3.0) / spec.basal;
    r.theta = spec.basal;
    return r;
}

void ReferenceTwoGene::validate() const {
    act_a.validate();
    act_b.validate();
    if (!(gamma_a > 0.0) || !(gamma_b > 0.0))
        throw DomainError("ReferenceTwoGene: degradation rates must be positive");
    if (!(lambda_rep_a > 0.0) || !(lambda_rep_b > 0.0))
        throw DomainError("ReferenceTwoGene: repression steepness must be positive");
}

Rhs ReferenceTwoGene::rhs() const {
    validate();
    const ReferenceTwoGene sys = *this; // capture by value: self-contained functor
    return [sys](double, const std::vector<double>& x, std::vector<double>& dx) {
        const double A = x[0], B = x[1];
        const double repA = standard_logistic(sys.lambda_rep_a * (sys.a0 - A));
        const double repB = standard_logistic(sys.lambda_rep_b * (sys.b0 - B));
        dx.resize(2);
        dx[0] = (sys.act_a.basal + sys.act_a.cross * B) * repA - sys.gamma_a * A;
        dx[1] = (sys.act_b.basal + sys.act_b.cross * A) * repB - sys.gamma_b * B;
    };
}

std::pair<double, double> reference_steady_state(const ReferenceTwoGene& sys) {
    sys.validate();
    const auto f = sys.rhs();
    std::vector<double> x{sys.act_a.basal / sys.gamma_a, sys.act_b.basal / sys.gamma_b};
    std::vector<double> F(2), Fp(2);
    f(0.0, x, F);
    for (int it = 0; it < 200; ++it) {
        const double fn = std::max(std::fabs(F[0]), std::fabs(F[1]));
        if (fn < 1e-12) break;
        // Jacobian by central differences (2x2, smooth system).
        Eigen::Matrix2d J;
        for (int j = 0; j < 2; ++j) {
            const double h = 1e-6 * (1.0 + std::fabs(x[j]));
            auto xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            std::vector<double> fp(2), fm(2);
            f(0.0, xp, fp);
            f(0.0, xm, fm);
            for (int i = 0; i < 2; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
        }
        const Eigen::Vector2d d = J.fullPivLu().solve(Eigen::Vector2d(-F[0], -F[1]));
        double step = 1.0;
        for (int bt = 0; bt < 40; ++bt) {
            std::vector<double> xn{x[0] + step * d(0), x[1] + step * d(1)};
            f(0.0, xn, Fp);
            if (std::max(std::fabs(Fp[0]), std::fabs(Fp[1])) < fn) {
                x = xn;
                F = Fp;
                break;
            }
            step *= 0.5;
        }
    }
    if (std::max(std::fabs(F[0]), std::fabs(F[1])) > 1e-9)
        throw NumericError("reference_steady_state: Newton did not converge");
    return {x[0], x[1]};
}

namespace {

void set_param(Network& net, const ParamRef& p, double v) {
    auto& g = net.genes.at(p.gene);
    switch (p.kind) {
        case ParamRef::Kind::GeneKappa: g.production = v; return;
        case ParamRef::Kind::GeneGamma: g.degradation = v; return;
        default: break;
    }
    auto& spec = std::get<LogisticSpec>(g.edges.at(p.edge).response);
    if (p.kind == ParamRef::Kind::EdgeSteepness)
        spec.steepness = v;
    else
        spec.threshold = v;
}

} // namespace

FitResult fit_least_squares(const FitProblem& problem,
                            const std::vector<double>& initial_guess,
                            const FitConfig& config) {
    problem.network.validate();
    if (problem.data.times.empty() || problem.data.dimension() != problem.network.size())
        throw DomainError("fit_least_squares: data empty or dimension mismatch");
    if (initial_guess.size() != problem.free_params.size())
        throw DomainError("fit_least_squares: guess size mismatch");
    if (!problem.weights.empty() && problem.weights.size() != problem.network.size())
        throw DomainError("fit_least_squares: weights must be per component");
    if (problem.free_params.size() >
        problem.data.times.size() * problem.network.size())
        throw DomainError("fit_least_squares: more parameters than data points");
    for (double v : initial_guess)
        if (!(v > 0.0))
            throw DomainError("fit_least_squares: initial guess violates positivity bounds");

    const std::size_t np = problem.free_params.size();
    const std::size_t nc = problem.network.size();
    const std::size_t nr = problem.data.times.size() * nc;

    IntegratorConfig icfg = problem.integrator;
    icfg.t_end = problem.data.times.back();
    icfg.dense_output = true;

    auto residuals = [&](const std::vector<double>& logp, Eigen::VectorXd& r) {
        Network net = problem.network;
        for (std::size_t i = 0; i < np; ++i)
            set_param(net, problem.free_params[i], std::exp(logp[i]));
        const Trajectory sim = simulate_ode(net, problem.data.states.front(), icfg);
        r.resize(static_cast<Eigen::Index>(nr));
        Eigen::Index k = 0;
        for (std::size_t t = 0; t < problem.data.times.size(); ++t) {
            const auto model = sim.sample(problem.data.times[t]);
            for (std::size_t c = 0; c < nc; ++c) {
                const double w = problem.weights.empty() ? 1.0 : problem.weights[c];
                r(k++) = w * (model[c] - problem.data.states[t][c]);
            }
        }
    };

    std::vector<double> logp(np);
    for (std::size_t i = 0; i < np; ++i) logp[i] = std::log(initial_guess[i]);

    FitResult out;
    Eigen::VectorXd r;
    residuals(logp, r);
    double sse = r.squaredNorm();

    if (np == 0) {
        out.sse = sse;
        return out;
    }

    double mu = 1e-3;
    Eigen::MatrixXd J(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(np));
    for (std::size_t it = 0; it < config.max_iterations; ++it) {
        // Central-difference Jacobian in log-parameter space.
        Eigen::VectorXd rp, rm;
        for (std::size_t j = 0; j < np; ++j) {
            auto lp = logp, lm = logp;
            lp[j] += config.fd_step;
            lm[j] -= config.fd_step;
            residuals(lp, rp);
            residuals(lm, rm);
            J.col(static_cast<Eigen::Index>(j)) = (rp - rm) / (2.0 * config.fd_step);
        }
        const Eigen::VectorXd g = J.transpose() * r;
        if (g.lpNorm<Eigen::Infinity>() < config.gradient_tol) break;
        const Eigen::MatrixXd JtJ = J.transpose() * J;

        bool stepped = false;
        while (mu < 1e12) {
            Eigen::MatrixXd A = JtJ;
            for (Eigen::Index d = 0; d < A.rows(); ++d)
                A(d, d) += mu * std::max(JtJ(d, d), 1e-12);
            const Eigen::VectorXd delta = A.ldlt().solve(-g);
            auto cand = logp;
            for (std::size_t j = 0; j < np; ++j)
                cand[j] += delta(static_cast<Eigen::Index>(j));
            Eigen::VectorXd rc;
            residuals(cand, rc);
            const double sse_c = rc.squaredNorm();
            if (sse_c < sse) {
                const double rel = (sse - sse_c) / std::max(sse, 1e-300);
                logp = cand;
                r = rc;
                sse = sse_c;
                mu = std::max(mu / 3.0, 1e-12);
                stepped = true;
                out.iterations = it + 1;
                if (rel < config.sse_improvement_tol) it = config.max_iterations;
                break;
            }
            mu *= 4.0;
        }
        if (!stepped) {
            if (g.lpNorm<Eigen::Infinity>() < 1e-4) break; // flat: accept as converged
            throw NumericError("fit_least_squares: diverged (no descent at max damping)");
        }
    }

    out.parameters.resize(np);
    for (std::size_t i = 0; i < np; ++i) out.parameters[i] = std::exp(logp[i]);
    out.sse = sse;
    return out;
}

} // namespace grn
