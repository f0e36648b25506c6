#include "grn/presets.hpp"

#include <cmath>

#include "grn/calibration.hpp"

namespace grn {

Network oscillator_network() {
    // Two-gene negative feedback: gene 1 repressed by gene 2, gene 2
    // activated by gene 1.
    Network net;
    net.names = {"x1", "x2"};
    GeneNode g1{3.0, 0.25, {{1, LogisticSpec{3.0, 3.0, Orientation::Decreasing}}}};
    GeneNode g2{4.0, 0.5, {{0, LogisticSpec{3.0, 4.0, Orientation::Increasing}}}};
    net.genes = {g1, g2};
    return net;
}

Network trap_network(bool hill) {
    // Same topology as the oscillator, strong degradation, near-zero start.
    Network net;
    net.names = {"x1", "x2"};
    SigmoidSpec rep = hill ? SigmoidSpec{HillSpec{3.0, 1.0, Orientation::Decreasing}}
                           : SigmoidSpec{LogisticSpec{3.0, 1.0, Orientation::Decreasing}};
    SigmoidSpec act = hill ? SigmoidSpec{HillSpec{3.0, 1.0, Orientation::Increasing}}
                           : SigmoidSpec{LogisticSpec{3.0, 1.0, Orientation::Increasing}};
    GeneNode g1{0.5, 8.0, {{1, rep}}};
    GeneNode g2{0.5, 5.0, {{0, act}}};
    net.genes = {g1, g2};
    return net;
}

Network two_node_lipschitz_network() {
    // Worked-bound example: two edges per gene, uniform steepness 2.5,
    // mutual activation plus self-repression.
    Network net;
    net.names = {"x1", "x2"};
    GeneNode g1{3.0, 0.25,
                {{1, LogisticSpec{2.5, 3.0, Orientation::Increasing}},
                 {0, LogisticSpec{2.5, 6.0, Orientation::Decreasing}}}};
    GeneNode g2{4.0, 0.5,
                {{0, LogisticSpec{2.5, 4.0, Orientation::Increasing}},
                 {1, LogisticSpec{2.5, 6.0, Orientation::Decreasing}}}};
    net.genes = {g1, g2};
    return net;
}

Network vinoth_calibrated_network() {
    // Fully logistic two-gene system with the closed-form calibrated
    // activation (g = 50, g_cross = 2.5) and the figure's self-repression.
    const CalibrationResult cal =
        derive_activation_params(LinearActivationSpec{50.0, 2.5});
    Network net;
    net.names = {"A", "B"};
    GeneNode ga{cal.kappa, 0.20,
                {{1, LogisticSpec{cal.lambda, cal.theta, Orientation::Increasing}},
                 {0, LogisticSpec{0.057, 70.0, Orientation::Decreasing}}}};
    GeneNode gb{cal.kappa, 0.24,
                {{0, LogisticSpec{cal.lambda, cal.theta, Orientation::Increasing}},
                 {1, LogisticSpec{0.057, 70.0, Orientation::Decreasing}}}};
    net.genes = {ga, gb};
    return net;
}

Network hematopoiesis_network(double tau) {
    // Scalar delayed self-repression dN/dt = -gamma N + kappa f(N(t - tau)).
    const HematopoiesisParams p;
    Network net;
    net.names = {"N"};
    GeneNode g{p.kappa, p.gamma,
               {{0, LogisticSpec{p.lambda, p.theta, Orientation::Decreasing}, tau}}};
    net.genes = {g};
    return net;
}

Rhs autoreg_rhs(bool hill) {
    // Positive autoregulation, mRNA/protein pair:
    //   dm = k_m h(x) - k_dm m,  dx = k_p m - k_dp x
    // with h a steep activation response (lambda = n = 3, threshold 1).
    const double km = 0.003, kdm = 0.001, kp = 0.002, kdp = 1e-5;
    if (hill) {
        const HillSpec h{3.0, 1.0, Orientation::Increasing};
        return [=](double, const std::vector<double>& y, std::vector<double>& dy) {
            dy.resize(2);
            dy[0] = km * hill_eval(h, std::max(y[1], 0.0)) - kdm * y[0];
            dy[1] = kp * y[0] - kdp * y[1];
        };
    }
    const LogisticSpec f{3.0, 1.0, Orientation::Increasing};
    return [=](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy.resize(2);
        dy[0] = km * logistic_eval(f, y[1]) - kdm * y[0];
        dy[1] = kp * y[0] - kdp * y[1];
    };
}

std::vector<std::string> preset_names() {
    return {"oscillator",       "trap-logistic",     "trap-hill",
            "autoreg-logistic", "autoreg-hill",      "vinoth-calibrated",
            "vinoth-reference", "two-node-lipschitz", "hematopoiesis"};
}

Scenario make_preset(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "oscillator") {
        s.network = oscillator_network();
        s.x0 = {1.0, 1.0};
        s.config.t_end = 60.0;
    } else if (name == "trap-logistic" || name == "trap-hill") {
        s.network = trap_network(name == "trap-hill");
        s.x0 = {0.02, 0.02};
        s.config.t_end = 10.0;
    } else if (name == "autoreg-logistic" || name == "autoreg-hill") {
        s.custom_rhs = autoreg_rhs(name == "autoreg-hill");
        s.state_names = {"m", "x"};
        s.x0 = {0.01, 0.01};
        s.config.t_end = 1e4;
        s.config.max_step = 10.0; // keep the slow protein ramp well resolved
    } else if (name == "vinoth-calibrated") {
        s.network = vinoth_calibrated_network();
        s.x0 = {10.0, 10.0};
        s.config.t_end = 50.0;
    } else if (name == "vinoth-reference") {
        ReferenceTwoGene ref;
        ref.act_a = {50.0, 2.5};
        ref.act_b = {50.0, 2.5};
        ref.gamma_a = 0.20;
        ref.gamma_b = 0.24;
        ref.lambda_rep_a = ref.lambda_rep_b = 0.057;
        ref.a0 = ref.b0 = 70.0;
        s.custom_rhs = ref.rhs();
        s.state_names = {"A", "B"};
        s.x0 = {10.0, 10.0};
        s.config.t_end = 50.0;
    } else if (name == "two-node-lipschitz") {
        s.network = two_node_lipschitz_network();
        s.x0 = {1.0, 1.0};
        s.config.t_end = 60.0;
    } else if (name == "hematopoiesis") {
        s.network = hematopoiesis_network(1.0); // above the critical delay
        s.x0 = {5.5};
        s.config.t_end = 80.0;
    } else {
        throw DomainError("unknown preset: " + name);
    }
    if (s.network && s.state_names.empty()) s.state_names = s.network->names;
    return s;
}

} // namespace grn
