#pragma once

#include <string>
#include <vector>

#include "grn/sigmoid.hpp"

namespace grn {

// One regulatory input of a gene. delay == 0 means an ODE edge.
struct RegulationEdge {
    std::size_t source = 0;
    SigmoidSpec response = LogisticSpec{};
    double delay = 0.0;
};

struct GeneNode {
    double production = 0.0;  // kappa >= 0
    double degradation = 1.0; // gamma > 0
    std::vector<RegulationEdge> edges;
};

// Product-of-sigmoids network: dx_i/dt = kappa_i * prod_m g_{i,m}(x_{j(i,m)})
// - gamma_i * x_i. A gene with no edges is constitutive (empty product = 1).
struct Network {
    std::vector<GeneNode> genes;
    std::vector<std::string> names; // optional; empty or one per gene

    std::size_t size() const { return genes.size(); }
    bool delayed() const;
    bool all_logistic() const;
    void validate() const;
    std::string gene_name(std::size_t i) const;
};

struct LipschitzReport {
    std::vector<double> per_gene_row_sums; // sum_j L_i^j = sum_m lambda_{i,m}/4
    double bound_F = 0.0;                  // M = max_i(kappa_i * row_sum_i + gamma_i)
    double bound_DF = 0.0;                 // K, second-derivative bound
};

// Product of the gene's edge responses at the given state.
double regulatory_product(const Network& net, std::size_t gene,
                          const std::vector<double>& state);

// F(x); rejects delayed networks (use dynamics::simulate_dde).
std::vector<double> vector_field(const Network& net, const std::vector<double>& state);

// Analytic Jacobian, row-major n*n. Hill edges use the closed-form
// derivative (singular at x=0 for non-integer n).
std::vector<double> jacobian(const Network& net, const std::vector<double>& state);

// Theorem-style global bounds; require all-logistic networks.
LipschitzReport lipschitz_bound_F(const Network& net);
LipschitzReport lipschitz_bound_DF(const Network& net);
LipschitzReport lipschitz_bounds(const Network& net); // both populated

// Positively invariant rectangle, one [0, kappa/gamma] interval per gene.
std::vector<std::pair<double, double>> invariant_box(const Network& net);

// Absorb per-edge input weights w (response reads w*x instead of x):
// lambda' = lambda*|w|, theta' = theta/w, orientation flips for w < 0.
// weights are ordered gene-major, edge-minor; all must be nonzero.
Network rescale_weights(const Network& net, const std::vector<double>& weights);

// Canonical argument z per edge so that every logistic response equals
// standard_logistic(z); same gene-major ordering as rescale_weights.
std::vector<double> standard_form_arguments(const Network& net,
                                            const std::vector<double>& state);

} // namespace grn
