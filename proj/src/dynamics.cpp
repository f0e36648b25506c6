#include "grn/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace grn {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order weights minus the embedded 4th-order ones (error estimator).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

std::size_t locate_interval(const std::vector<double>& ts, double t) {
    // Index i with ts[i] <= t <= ts[i+1], clamped to the ends.
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
    return std::min(i, ts.size() - 2);
}

double hermite(double t, double t0, double t1, double y0, double y1, double d0,
               double d1) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s2 * (3 - 2 * s);
    const double h11 = s2 * (s - 1);
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

// Core stepper. When view != nullptr, *view is pointed at the trajectory
// under construction before the first rhs call, so a DDE right-hand side
// can interpolate already-accepted segments while the run is in flight.
Trajectory integrate_core(const Rhs& rhs, const std::vector<double>& x0,
                          const IntegratorConfig& config, const Trajectory** view) {
    const std::size_t n = x0.size();
    if (n == 0) throw DomainError("integrate: empty state");
    if (!(config.t_end > 0.0) || !(config.rel_tol > 0.0) || !(config.abs_tol > 0.0))
        throw DomainError("integrate: t_end and tolerances must be positive");
    for (double v : x0)
        if (!std::isfinite(v)) throw DomainError("integrate: non-finite initial state");

    Trajectory traj;
    if (view) *view = &traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    std::vector<double> y = x0, ynew(n);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);
    rhs(0.0, y, k1);
    traj.derivatives.push_back(k1);

    const double hmax = config.max_step > 0.0 ? config.max_step : config.t_end;
    double h = config.initial_step > 0.0 ? config.initial_step
                                         : std::min(config.t_end / 100.0, hmax);
    h = std::min(h, hmax);
    double t = 0.0;
    double err_prev = 1.0;
    const double hmin = config.t_end * 1e-14;

    while (t < config.t_end) {
        h = std::min(h, config.t_end - t);
        if (h < hmin) throw NumericError("integrate: step size underflow");

        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                 a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                  b6 * k6[i]);
        rhs(t + h, ynew, k7); // FSAL stage; also the estimator's last term

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(ynew[i])) finite = false;
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = config.abs_tol +
                              config.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (finite && err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;
            traj.times.push_back(t);
            traj.states.push_back(y);
            traj.derivatives.push_back(k1);
            ++traj.accepted_steps;
            // PI-style controller: mild damping through the previous error.
            const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                               std::pow(err_prev, 0.4 / 5.0);
            err_prev = std::max(err, 1e-10);
            h = std::min(h * std::clamp(fac, 0.2, 5.0), hmax);
        } else {
            ++traj.rejected_steps;
            if (!finite) {
                h *= 0.25;
                continue;
            }
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    if (!config.dense_output) traj.derivatives.clear();
    return traj;
}

// Instantaneous product field, reading the current state on every edge
// (used when all delays are degenerate).
void instantaneous_field(const Network& net, const std::vector<double>& x,
                         std::vector<double>& dx) {
    dx.assign(net.size(), 0.0);
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& g = net.genes[i];
        double prod = 1.0;
        for (const auto& e : g.edges) prod *= sigmoid_eval(e.response, x[e.source]);
        dx[i] = g.production * prod - g.degradation * x[i];
    }
}

} // namespace

std::vector<double> Trajectory::sample(double t) const {
    const std::size_t n = dimension();
    std::vector<double> out(n);
    for (std::size_t c = 0; c < n; ++c) out[c] = sample_component(t, c);
    return out;
}

double Trajectory::sample_component(double t, std::size_t comp) const {
    if (times.empty()) throw DomainError("Trajectory::sample: empty trajectory");
    if (times.size() == 1 || t <= times.front()) return states.front().at(comp);
    if (t >= times.back()) return states.back().at(comp);
    const std::size_t i = locate_interval(times, t);
    const double t0 = times[i], t1 = times[i + 1];
    const double y0 = states[i][comp], y1 = states[i + 1][comp];
    if (derivatives.size() == times.size())
        return hermite(t, t0, t1, y0, y1, derivatives[i][comp],
                       derivatives[i + 1][comp]);
    const double s = (t - t0) / (t1 - t0);
    return y0 + s * (y1 - y0);
}

double History::value(double t, std::size_t comp) const {
    if (const auto* v = std::get_if<std::vector<double>>(&data)) return v->at(comp);
    const auto& traj = std::get<Trajectory>(data);
    if (t < traj.t_begin() - 1e-9 * (std::fabs(traj.t_begin()) + 1.0))
        throw DomainError("History: lookback before the covered window");
    return traj.sample_component(t, comp);
}

std::size_t History::dimension() const {
    if (const auto* v = std::get_if<std::vector<double>>(&data)) return v->size();
    return std::get<Trajectory>(data).dimension();
}

Trajectory integrate(const Rhs& rhs, const std::vector<double>& x0,
                     const IntegratorConfig& config) {
    return integrate_core(rhs, x0, config, nullptr);
}

Trajectory simulate_ode(const Network& net, const std::vector<double>& x0,
                        const IntegratorConfig& config) {
    net.validate();
    if (net.size() == 0) throw DomainError("simulate_ode: zero-gene network");
    if (net.delayed())
        throw UnsupportedError("simulate_ode: delayed network; use simulate_dde");
    if (x0.size() != net.size()) throw DomainError("simulate_ode: x0 dimension mismatch");
    for (double v : x0)
        if (v < 0.0) throw DomainError("simulate_ode: x0 must be nonnegative");
    Rhs rhs = [&net](double, const std::vector<double>& x, std::vector<double>& dx) {
        dx = vector_field(net, x);
    };
    return integrate(rhs, x0, config);
}

Trajectory simulate_dde(const Network& net, const History& history,
                        const IntegratorConfig& config) {
    net.validate();
    if (net.size() == 0) throw DomainError("simulate_dde: zero-gene network");
    if (history.dimension() != net.size())
        throw DomainError("simulate_dde: history dimension mismatch");

    const double eps_delay = 1e-12 * config.t_end;
    double min_delay = 0.0;
    for (const auto& g : net.genes)
        for (const auto& e : g.edges)
            if (e.delay > eps_delay)
                min_delay = min_delay == 0.0 ? e.delay : std::min(min_delay, e.delay);

    std::vector<double> x0(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) x0[i] = history.value(0.0, i);

    if (min_delay == 0.0) {
        // All delays degenerate: same stepper, plain instantaneous field.
        Rhs rhs = [&net](double, const std::vector<double>& x, std::vector<double>& dx) {
            instantaneous_field(net, x, dx);
        };
        return integrate(rhs, x0, config);
    }

    const Trajectory* partial = nullptr;
    auto lookup = [&history, &partial](double tq, std::size_t comp) {
        if (tq <= 0.0) return history.value(tq, comp);
        return partial->sample_component(tq, comp);
    };
    Rhs rhs = [&net, &lookup, eps_delay](double t, const std::vector<double>& x,
                                         std::vector<double>& dx) {
        dx.assign(net.size(), 0.0);
        for (std::size_t i = 0; i < net.size(); ++i) {
            const auto& g = net.genes[i];
            double prod = 1.0;
            for (const auto& e : g.edges) {
                const double in =
                    e.delay > eps_delay ? lookup(t - e.delay, e.source) : x[e.source];
                prod *= sigmoid_eval(e.response, in);
            }
            dx[i] = g.production * prod - g.degradation * x[i];
        }
    };

    IntegratorConfig cfg = config;
    cfg.dense_output = true; // lookback interpolates through node derivatives
    // Method-of-steps segment cap: with h <= min positive delay, every stage
    // lookback t - tau lands in already-completed intervals.
    cfg.max_step = cfg.max_step > 0.0 ? std::min(cfg.max_step, min_delay) : min_delay;
    cfg.initial_step = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, min_delay)
                                              : std::min(min_delay, config.t_end / 100.0);
    Trajectory out = integrate_core(rhs, x0, cfg, &partial);
    if (!config.dense_output) out.derivatives.clear();
    return out;
}

std::optional<double> measure_escape_time(const Trajectory& traj,
                                          std::size_t component, double level) {
    if (traj.times.empty() || component >= traj.dimension())
        throw DomainError("measure_escape_time: bad component or empty trajectory");
    for (std::size_t i = 0; i + 1 < traj.times.size(); ++i) {
        const double a = traj.states[i][component];
        const double b = traj.states[i + 1][component];
        if (a < level && b >= level) {
            const double s = (level - a) / (b - a);
            return traj.times[i] + s * (traj.times[i + 1] - traj.times[i]);
        }
    }
    return std::nullopt;
}

} // namespace grn
