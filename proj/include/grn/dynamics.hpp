#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "grn/network.hpp"

namespace grn {

struct IntegratorConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double t_end = 1.0;
    double max_step = 0.0;     // 0 = no cap
    double initial_step = 0.0; // 0 = choose automatically
    bool dense_output = true;  // keep node derivatives for interpolation
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<std::vector<double>> derivatives; // per node, when dense_output
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;

    std::size_t dimension() const { return states.empty() ? 0 : states.front().size(); }
    double t_begin() const { return times.front(); }
    double t_end() const { return times.back(); }

    // Cubic Hermite between stored nodes (the RK pair's interpolant data);
    // falls back to linear interpolation when derivatives were not kept.
    std::vector<double> sample(double t) const;
    double sample_component(double t, std::size_t comp) const;
};

// Initial data for delayed systems on [t0 - max_delay, t0].
struct History {
    std::variant<std::vector<double>, Trajectory> data;

    static History constant(std::vector<double> x0) { return History{std::move(x0)}; }
    static History interpolated(Trajectory traj) { return History{std::move(traj)}; }

    double value(double t, std::size_t comp) const;
    std::size_t dimension() const;
};

// Right-hand side dx = f(t, x) for the generic integrator.
using Rhs = std::function<void(double t, const std::vector<double>& x,
                               std::vector<double>& dx)>;

// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) integration of an
// arbitrary smooth system. Building block for both simulate paths and for
// the non-network scenario systems (autoregulation, calibration reference).
Trajectory integrate(const Rhs& rhs, const std::vector<double>& x0,
                     const IntegratorConfig& config);

Trajectory simulate_ode(const Network& net, const std::vector<double>& x0,
                        const IntegratorConfig& config);

// Method of steps: step size capped at the smallest positive delay, delayed
// lookups served by Hermite interpolation of already-computed segments.
// Delays below 1e-12 * t_end are treated as zero (read the current state).
Trajectory simulate_dde(const Network& net, const History& history,
                        const IntegratorConfig& config);

// First time the component crosses level from below (linear interpolation
// between samples); nullopt if it never does.
std::optional<double> measure_escape_time(const Trajectory& traj,
                                          std::size_t component, double level);

} // namespace grn
