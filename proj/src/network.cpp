#include "grn/network.hpp"

#include <cmath>

namespace grn {

namespace {

constexpr double kSecondDerivPeak = 0.096; // |f(1-f)(1-2f)| peak, as the
// worked bound evaluates it (exact value is sqrt(3)/18 = 0.09623...).

void require_all_logistic(const Network& net, const char* who) {
    if (!net.all_logistic())
        throw UnsupportedError(std::string(who) + ": requires all-logistic edges");
}

void check_state(const Network& net, const std::vector<double>& state, const char* who) {
    if (state.size() != net.size())
        throw DomainError(std::string(who) + ": state dimension mismatch");
    for (double v : state)
        if (!std::isfinite(v)) throw DomainError(std::string(who) + ": non-finite state");
}

} // namespace

bool Network::delayed() const {
    for (const auto& g : genes)
        for (const auto& e : g.edges)
            if (e.delay > 0.0) return true;
    return false;
}

bool Network::all_logistic() const {
    for (const auto& g : genes)
        for (const auto& e : g.edges)
            if (!std::holds_alternative<LogisticSpec>(e.response)) return false;
    return true;
}

void Network::validate() const {
    if (!names.empty() && names.size() != genes.size())
        throw DomainError("Network: names must be empty or one per gene");
    for (const auto& g : genes) {
        if (!(g.production >= 0.0) || !std::isfinite(g.production))
            throw DomainError("Network: production rate must be nonnegative");
        if (!(g.degradation > 0.0) || !std::isfinite(g.degradation))
            throw DomainError("Network: degradation rate must be positive");
        for (const auto& e : g.edges) {
            if (e.source >= genes.size())
                throw DomainError("Network: edge source out of range");
            if (!(e.delay >= 0.0) || !std::isfinite(e.delay))
                throw DomainError("Network: edge delay must be nonnegative");
            std::visit([](const auto& s) { s.validate(); }, e.response);
        }
    }
}

std::string Network::gene_name(std::size_t i) const {
    if (i < names.size() && !names[i].empty()) return names[i];
    return "x" + std::to_string(i + 1);
}

double regulatory_product(const Network& net, std::size_t gene,
                          const std::vector<double>& state) {
    check_state(net, state, "regulatory_product");
    double prod = 1.0;
    for (const auto& e : net.genes.at(gene).edges)
        prod *= sigmoid_eval(e.response, state[e.source]);
    return prod;
}

std::vector<double> vector_field(const Network& net, const std::vector<double>& state) {
    if (net.delayed())
        throw UnsupportedError("vector_field: delayed network; use simulate_dde");
    check_state(net, state, "vector_field");
    std::vector<double> f(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& g = net.genes[i];
        f[i] = g.production * regulatory_product(net, i, state) - g.degradation * state[i];
    }
    return f;
}

std::vector<double> jacobian(const Network& net, const std::vector<double>& state) {
    if (net.delayed())
        throw UnsupportedError("jacobian: delayed network");
    check_state(net, state, "jacobian");
    const std::size_t n = net.size();
    std::vector<double> J(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& g = net.genes[i];
        const std::size_t m = g.edges.size();
        std::vector<double> vals(m);
        for (std::size_t k = 0; k < m; ++k)
            vals[k] = sigmoid_eval(g.edges[k].response, state[g.edges[k].source]);
        for (std::size_t k = 0; k < m; ++k) {
            double others = 1.0;
            for (std::size_t q = 0; q < m; ++q)
                if (q != k) others *= vals[q];
            const double d = sigmoid_derivative(g.edges[k].response,
                                                state[g.edges[k].source]);
            J[i * n + g.edges[k].source] += g.production * d * others;
        }
        J[i * n + i] -= g.degradation;
    }
    return J;
}

LipschitzReport lipschitz_bound_F(const Network& net) {
    require_all_logistic(net, "lipschitz_bound_F");
    net.validate();
    LipschitzReport rep;
    rep.per_gene_row_sums.reserve(net.size());
    double M = 0.0;
    for (const auto& g : net.genes) {
        double row = 0.0;
        for (const auto& e : g.edges)
            row += std::get<LogisticSpec>(e.response).steepness / 4.0;
        rep.per_gene_row_sums.push_back(row);
        M = std::max(M, g.production * row + g.degradation);
    }
    rep.bound_F = M;
    return rep;
}

LipschitzReport lipschitz_bound_DF(const Network& net) {
    require_all_logistic(net, "lipschitz_bound_DF");
    net.validate();
    LipschitzReport rep = lipschitz_bound_F(net);
    double kappa_max = 0.0, worst = 0.0;
    for (const auto& g : net.genes) {
        kappa_max = std::max(kappa_max, g.production);
        const double mi = static_cast<double>(g.edges.size());
        double lam_max = 0.0;
        for (const auto& e : g.edges)
            lam_max = std::max(lam_max, std::get<LogisticSpec>(e.response).steepness);
        const double l2 = lam_max * lam_max;
        worst = std::max(worst, mi * mi * l2 / 16.0 + mi * l2 * kSecondDerivPeak);
    }
    rep.bound_DF = kappa_max * worst;
    return rep;
}

LipschitzReport lipschitz_bounds(const Network& net) {
    LipschitzReport rep = lipschitz_bound_DF(net);
    return rep;
}

std::vector<std::pair<double, double>> invariant_box(const Network& net) {
    net.validate();
    std::vector<std::pair<double, double>> box;
    box.reserve(net.size());
    for (const auto& g : net.genes)
        box.emplace_back(0.0, g.production / g.degradation);
    return box;
}

Network rescale_weights(const Network& net, const std::vector<double>& weights) {
    net.validate();
    std::size_t edge_count = 0;
    for (const auto& g : net.genes) edge_count += g.edges.size();
    if (weights.size() != edge_count)
        throw DomainError("rescale_weights: one weight per edge required");
    Network out = net;
    std::size_t k = 0;
    for (auto& g : out.genes) {
        for (auto& e : g.edges) {
            const double w = weights[k++];
            if (w == 0.0) throw DomainError("rescale_weights: zero weight");
            auto* spec = std::get_if<LogisticSpec>(&e.response);
            if (!spec)
                throw UnsupportedError("rescale_weights: logistic edges only");
            spec->threshold /= w;
            spec->steepness *= std::fabs(w);
            if (w < 0.0)
                spec->orientation = spec->orientation == Orientation::Increasing
                                        ? Orientation::Decreasing
                                        : Orientation::Increasing;
        }
    }
    return out;
}

std::vector<double> standard_form_arguments(const Network& net,
                                            const std::vector<double>& state) {
    check_state(net, state, "standard_form_arguments");
    std::vector<double> zs;
    for (const auto& g : net.genes) {
        for (const auto& e : g.edges) {
            const auto* spec = std::get_if<LogisticSpec>(&e.response);
            if (!spec)
                throw UnsupportedError("standard_form_arguments: logistic edges only");
            const double sgn = spec->orientation == Orientation::Increasing ? 1.0 : -1.0;
            zs.push_back(sgn * spec->steepness * (state[e.source] - spec->threshold));
        }
    }
    return zs;
}

} // namespace grn
