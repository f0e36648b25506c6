#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grn/dynamics.hpp"
#include "grn/network.hpp"

namespace grn {

// A ready-to-run scenario: either a Network or a custom right-hand side
// (the autoregulation two-state model and the calibration reference system
// are not product-of-sigmoids networks).
struct Scenario {
    std::string name;
    std::optional<Network> network;
    Rhs custom_rhs; // set when network is absent
    std::vector<std::string> state_names;
    std::vector<double> x0;
    IntegratorConfig config; // scenario defaults (t_end, max_step)
};

// Known presets:
//   oscillator, trap-logistic, trap-hill, autoreg-logistic, autoreg-hill,
//   vinoth-calibrated, vinoth-reference, two-node-lipschitz, hematopoiesis
Scenario make_preset(const std::string& name);
std::vector<std::string> preset_names();

// Building blocks reused by tests.
Network oscillator_network();
Network trap_network(bool hill);
Network two_node_lipschitz_network();
Network vinoth_calibrated_network();
Network hematopoiesis_network(double tau);
Rhs autoreg_rhs(bool hill);

// Shared hematopoiesis parameters (kappa, gamma, lambda, theta).
struct HematopoiesisParams {
    double kappa = 10.0;
    double gamma = 1.0;
    double lambda = 1.0;
    double theta = 5.0;
};

} // namespace grn
