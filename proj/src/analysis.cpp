#include "grn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace grn {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

Classification classify_eigenvalues(const Eigen::VectorXcd& ev, double tol) {
    bool any_zero = false, any_pos = false, any_neg = false, any_complex = false;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double re = ev[i].real();
        if (std::fabs(re) <= tol) any_zero = true;
        else if (re > 0.0) any_pos = true;
        else any_neg = true;
        if (std::fabs(ev[i].imag()) > tol) any_complex = true;
    }
    if (any_zero) return Classification::Undetermined;
    if (any_pos && any_neg) return Classification::Saddle;
    if (any_pos) return Classification::Unstable;
    return any_complex ? Classification::StableSpiral : Classification::StableNode;
}

// Bisection on a bracketing interval of a continuous function.
template <typename F>
double bisect(F&& f, double lo, double hi, double flo) {
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::fabs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

const char* to_string(Classification c) {
    switch (c) {
        case Classification::StableNode: return "StableNode";
        case Classification::StableSpiral: return "StableSpiral";
        case Classification::Saddle: return "Saddle";
        case Classification::Unstable: return "Unstable";
        default: return "Undetermined";
    }
}

EquilibriumReport find_equilibrium(const Network& net, const std::vector<double>& guess,
                                   double tol) {
    net.validate();
    if (net.delayed())
        throw UnsupportedError("find_equilibrium: delayed network");
    const std::size_t n = net.size();
    if (guess.size() != n) throw DomainError("find_equilibrium: guess dimension mismatch");

    const auto box = invariant_box(net);
    auto project = [&box](std::vector<double>& x) {
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = std::clamp(x[i], box[i].first, box[i].second);
    };

    std::vector<double> x = guess;
    project(x);
    std::vector<double> F = vector_field(net, x);
    double fn = inf_norm(F);

    EquilibriumReport rep;
    for (std::size_t it = 0; it < 100 && fn > tol; ++it) {
        const auto Jv = jacobian(net, x);
        Eigen::MatrixXd J(n, n);
        Eigen::VectorXd rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            rhs(static_cast<Eigen::Index>(i)) = -F[i];
            for (std::size_t j = 0; j < n; ++j)
                J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    Jv[i * n + j];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible())
            throw NumericError("find_equilibrium: singular Jacobian at iterate");
        const Eigen::VectorXd d = lu.solve(rhs);

        // Backtracking damping on the residual norm.
        double step = 1.0;
        std::vector<double> xn(n);
        bool improved = false;
        for (int bt = 0; bt < 40; ++bt) {
            for (std::size_t i = 0; i < n; ++i)
                xn[i] = x[i] + step * d(static_cast<Eigen::Index>(i));
            project(xn);
            const auto Fn = vector_field(net, xn);
            const double fnn = inf_norm(Fn);
            if (fnn < fn) {
                x = xn;
                F = Fn;
                fn = fnn;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        rep.iterations = it + 1;
        if (!improved)
            throw NumericError("find_equilibrium: no progress (did not converge)");
    }
    if (fn > tol) throw NumericError("find_equilibrium: not converged in 100 iterations");

    rep.state = x;
    rep.residual_norm = fn;
    const auto Jv = jacobian(net, x);
    if (n == 2) {
        rep.trace = Jv[0] + Jv[3];
        rep.determinant = Jv[0] * Jv[3] - Jv[1] * Jv[2];
        rep.discriminant = rep.trace * rep.trace - 4.0 * rep.determinant;
        rep.classification = classify_2x2(rep.trace, rep.determinant);
    } else {
        Eigen::MatrixXd J(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    Jv[i * n + j];
        Eigen::EigenSolver<Eigen::MatrixXd> es(J, false);
        rep.trace = J.trace();
        rep.determinant = J.determinant();
        rep.classification = classify_eigenvalues(es.eigenvalues(), 10.0 * tol);
    }
    return rep;
}

BistabilityReport autoreg_fixed_points(const SigmoidSpec& response, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("autoreg_fixed_points: alpha must be positive");
    const Orientation orient = std::visit([](const auto& s) { return s.orientation; },
                                          response);
    if (orient != Orientation::Increasing)
        throw DomainError("autoreg_fixed_points: increasing response required");

    const bool is_hill = std::holds_alternative<HillSpec>(response);
    const double threshold =
        std::visit([](const auto& s) { return s.threshold; }, response);

    auto g = [&](double x) { return x - alpha * sigmoid_eval(response, x); };
    auto stable_at = [&](double x) {
        return 1.0 - alpha * sigmoid_derivative(response, x) > 0.0;
    };

    BistabilityReport rep;
    rep.alpha = alpha;

    if (is_hill) {
        // h(0) = 0 exactly, so x = 0 is always a fixed point; one-sided
        // stability from h'(0+) (divergent for non-integer n < 1 regimes).
        bool stable0 = true;
        try {
            stable0 = 1.0 - alpha * sigmoid_derivative(response, 0.0) > 0.0;
        } catch (const SingularityError&) {
            stable0 = false; // derivative diverges: the origin repels
        }
        rep.fixed_points.push_back({0.0, stable0});
    }

    const double hi = alpha * (1.0 + 1e-6);
    const int grid = 10000;
    // Uniform scan plus a geometric refinement of the first cell: for Hill
    // responses g(0) = 0 exactly, so roots very close to the origin would
    // otherwise hide inside the first uniform interval.
    std::vector<double> xs;
    for (double x = hi / grid * 1e-9; x < hi / grid; x *= 1.6) xs.push_back(x);
    for (int k = 1; k <= grid; ++k) xs.push_back(hi * static_cast<double>(k) / grid);
    double xprev = xs.front(), gprev = g(xprev);
    for (std::size_t k = 1; k < xs.size(); ++k) {
        const double xk = xs[k];
        const double gk = g(xk);
        if ((gprev < 0.0 && gk >= 0.0) || (gprev > 0.0 && gk <= 0.0)) {
            const double root = bisect(g, xprev, xk, gprev);
            rep.fixed_points.push_back({root, stable_at(root)});
        }
        xprev = xk;
        gprev = gk;
    }

    // Regime from the interior picture; the Hill boundary root at 0 exists
    // for every alpha and carries no bifurcation information.
    std::size_t interior_stable = 0;
    double stable_x = 0.0;
    for (const auto& fp : rep.fixed_points)
        if (fp.stable && fp.x > 0.0) {
            ++interior_stable;
            stable_x = fp.x;
        }
    if (interior_stable >= 2)
        rep.regime = BistabilityRegime::Bistable;
    else if (interior_stable == 1)
        rep.regime = stable_x >= threshold ? BistabilityRegime::MonostableHigh
                                           : BistabilityRegime::MonostableLow;
    else
        rep.regime = BistabilityRegime::MonostableLow;
    return rep;
}

std::pair<double, double> hill_alpha_crit(double n, double c) {
    if (!(n > 1.0)) throw DomainError("hill_alpha_crit: requires n > 1 (no tangency)");
    if (!(c > 0.0)) throw DomainError("hill_alpha_crit: threshold must be positive");
    const double x_crit = c * std::pow(n - 1.0, 1.0 / n);
    const double alpha_crit = n * c / std::pow(n - 1.0, (n - 1.0) / n);
    return {x_crit, alpha_crit};
}

BistabilityReport logistic_saddle_nodes(double lambda, double theta) {
    if (!(lambda > 0.0) || !(theta > 0.0))
        throw DomainError("logistic_saddle_nodes: lambda and theta must be positive");
    BistabilityReport rep;
    const double lt = lambda * theta;
    // phi is convex with minimum phi(0) = 2 - lambda*theta: two tangency
    // roots straddle 0 exactly when lambda*theta > 2.
    auto phi = [lt](double z) { return std::exp(z) - z - (lt - 1.0); };
    if (!(phi(0.0) < 0.0)) return rep; // no bistable band (degenerate at lt = 2)

    const double left = -(lt + 5.0);                    // phi > 0 out here
    const double right = std::max(50.0, std::log(lt) + 10.0); // and out here
    const double z_neg = bisect(phi, left, 0.0, phi(left));
    const double z_pos = bisect(phi, 0.0, right, phi(0.0));
    auto alpha_at = [lambda](double z) {
        const double y = standard_logistic(z);
        return 1.0 / (lambda * y * (1.0 - y));
    };
    rep.tangency_z = {z_neg, z_pos};
    // Larger-y root (z > 0) gives the band's lower edge, smaller-y the upper.
    rep.alpha_crit_lower = alpha_at(z_pos);
    rep.alpha_crit_upper = alpha_at(z_neg);
    return rep;
}

Classification classify_2x2(double trace, double det) {
    if (!std::isfinite(trace) || !std::isfinite(det))
        throw DomainError("classify_2x2: inputs must be finite");
    if (det < 0.0) return Classification::Saddle;
    if (det == 0.0 || trace == 0.0) return Classification::Undetermined;
    const double disc = trace * trace - 4.0 * det;
    if (trace < 0.0)
        return disc < 0.0 ? Classification::StableSpiral : Classification::StableNode;
    return Classification::Unstable;
}

double scalar_dde_equilibrium(double kappa, double gamma, const LogisticSpec& response) {
    response.validate();
    if (response.orientation != Orientation::Decreasing)
        throw DomainError("scalar_dde_equilibrium: decreasing response required");
    if (!(kappa >= 0.0) || !(gamma > 0.0))
        throw DomainError("scalar_dde_equilibrium: kappa >= 0 and gamma > 0 required");
    if (kappa == 0.0) return 0.0;
    auto g = [&](double N) { return kappa * logistic_eval(response, N) - gamma * N; };
    double lo = 0.0, hi = kappa / gamma;
    double flo = g(lo);
    if (flo == 0.0) return lo;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if (fm == 0.0) return mid;
        if ((flo > 0.0) == (fm > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

HopfReport hopf_from_beta(double gamma, double beta, int k_max) {
    if (!(gamma > 0.0) || !(beta >= 0.0) || k_max < 0)
        throw DomainError("hopf_from_beta: gamma > 0, beta >= 0, k_max >= 0 required");
    HopfReport rep;
    rep.gamma = gamma;
    rep.beta = beta;
    if (beta <= gamma) return rep; // delay-independent stability: no Hopf
    rep.omega = std::sqrt((beta - gamma) * (beta + gamma));
    const double base = std::acos(-gamma / beta);
    rep.critical_delays.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k)
        rep.critical_delays.push_back((base + 2.0 * M_PI * k) / rep.omega);
    return rep;
}

HopfReport hopf_critical_delay(double kappa, double gamma, const LogisticSpec& response,
                               int k_max) {
    const double nstar = scalar_dde_equilibrium(kappa, gamma, response);
    const double f = logistic_eval(response, nstar);
    const double beta = kappa * response.steepness * f * (1.0 - f);
    HopfReport rep = hopf_from_beta(gamma, beta, k_max);
    rep.equilibrium = nstar;
    return rep;
}

} // namespace grn
