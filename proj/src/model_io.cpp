#include "grn/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>


namespace grn {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const char* where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok)
            throw DomainError(std::string("model file: unknown field \"") + key +
                              "\" in " + where);
    }
}

double get_number(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw DomainError(std::string("model file: missing numeric \"") + key +
                          "\" in " + where);
    return obj[key].get<double>();
}

} // namespace

Network network_from_json(const json& doc) {
    if (!doc.is_object()) throw DomainError("model file: root must be an object");
    reject_unknown(doc, {"units", "genes"}, "root");
    if (doc.contains("units")) {
        if (!doc["units"].is_object())
            throw DomainError("model file: units must be an object");
        reject_unknown(doc["units"], {"time", "concentration"}, "units");
    }
    if (!doc.contains("genes") || !doc["genes"].is_array())
        throw DomainError("model file: genes array required");

    Network net;
    for (const auto& jg : doc["genes"]) {
        reject_unknown(jg, {"name", "kappa", "gamma", "edges"}, "gene");
        GeneNode gene;
        gene.production = get_number(jg, "kappa", "gene");
        gene.degradation = get_number(jg, "gamma", "gene");
        net.names.push_back(jg.value("name", ""));
        if (jg.contains("edges")) {
            if (!jg["edges"].is_array())
                throw DomainError("model file: edges must be an array");
            for (const auto& je : jg["edges"]) {
                reject_unknown(je,
                               {"source", "family", "steepness_or_n", "theta",
                                "orientation", "delay", "scaled"},
                               "edge");
                RegulationEdge edge;
                if (!je.contains("source") || !je["source"].is_number_unsigned())
                    throw DomainError("model file: edge source must be a gene index");
                edge.source = je["source"].get<std::size_t>();
                edge.delay = je.contains("delay") ? get_number(je, "delay", "edge") : 0.0;

                const std::string family = je.value("family", "logistic");
                const std::string orient_s = je.value("orientation", "");
                Orientation orient;
                if (orient_s == "activation")
                    orient = Orientation::Increasing;
                else if (orient_s == "repression")
                    orient = Orientation::Decreasing;
                else
                    throw DomainError(
                        "model file: orientation must be activation or repression");
                const double steep = get_number(je, "steepness_or_n", "edge");
                const double theta = get_number(je, "theta", "edge");
                const bool scaled = je.value("scaled", false);

                if (family == "logistic") {
                    edge.response = LogisticSpec{steep, theta, orient};
                    if (scaled) {
                        if (orient != Orientation::Decreasing)
                            throw DomainError(
                                "model file: scaled applies to repression edges only");
                        // Scaled repression is the plain edge with the gene's
                        // kappa multiplied by (1 + e^{-lambda*theta}).
                        gene.production *= 1.0 + std::exp(-steep * theta);
                    }
                } else if (family == "hill") {
                    if (scaled)
                        throw DomainError("model file: scaled applies to logistic edges");
                    edge.response = HillSpec{steep, theta, orient};
                } else {
                    throw DomainError("model file: family must be logistic or hill");
                }
                gene.edges.push_back(edge);
            }
        }
        net.genes.push_back(std::move(gene));
    }
    net.validate();
    return net;
}

json network_to_json(const Network& net) {
    net.validate();
    json genes = json::array();
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& g = net.genes[i];
        json jg;
        jg["name"] = net.gene_name(i);
        jg["kappa"] = g.production;
        jg["gamma"] = g.degradation;
        json edges = json::array();
        for (const auto& e : g.edges) {
            json je;
            je["source"] = e.source;
            je["delay"] = e.delay;
            if (const auto* l = std::get_if<LogisticSpec>(&e.response)) {
                je["family"] = "logistic";
                je["steepness_or_n"] = l->steepness;
                je["theta"] = l->threshold;
                je["orientation"] = l->orientation == Orientation::Increasing
                                        ? "activation"
                                        : "repression";
            } else {
                const auto& h = std::get<HillSpec>(e.response);
                je["family"] = "hill";
                je["steepness_or_n"] = h.coefficient;
                je["theta"] = h.threshold;
                je["orientation"] = h.orientation == Orientation::Increasing
                                        ? "activation"
                                        : "repression";
            }
            edges.push_back(je);
        }
        jg["edges"] = edges;
        genes.push_back(jg);
    }
    return json{{"genes", genes}};
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open model file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("model file parse error: ") + e.what());
    }
    return network_from_json(doc);
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write model file: " + path);
    out << network_to_json(net).dump(2) << "\n";
}

json to_json(const LipschitzReport& rep) {
    return json{{"per_gene_row_sums", rep.per_gene_row_sums},
                {"bound_F", rep.bound_F},
                {"bound_DF", rep.bound_DF}};
}

json to_json(const EquilibriumReport& rep) {
    return json{{"state", rep.state},
                {"residual_norm", rep.residual_norm},
                {"trace", rep.trace},
                {"determinant", rep.determinant},
                {"discriminant", rep.discriminant},
                {"classification", to_string(rep.classification)},
                {"iterations", rep.iterations}};
}

json to_json(const BistabilityReport& rep) {
    json fps = json::array();
    for (const auto& fp : rep.fixed_points)
        fps.push_back(json{{"x", fp.x}, {"stable", fp.stable}});
    json j{{"alpha", rep.alpha}, {"fixed_points", fps}};
    if (rep.alpha_crit_lower) j["alpha_crit_lower"] = *rep.alpha_crit_lower;
    if (rep.alpha_crit_upper) j["alpha_crit_upper"] = *rep.alpha_crit_upper;
    if (!rep.tangency_z.empty()) j["tangency_z"] = rep.tangency_z;
    if (rep.regime) {
        switch (*rep.regime) {
            case BistabilityRegime::MonostableLow: j["regime"] = "MonostableLow"; break;
            case BistabilityRegime::Bistable: j["regime"] = "Bistable"; break;
            case BistabilityRegime::MonostableHigh: j["regime"] = "MonostableHigh"; break;
        }
    }
    return j;
}

json to_json(const HopfReport& rep) {
    return json{{"equilibrium", rep.equilibrium},
                {"beta", rep.beta},
                {"gamma", rep.gamma},
                {"omega", rep.omega},
                {"critical_delays", rep.critical_delays}};
}

json to_json(const CalibrationResult& result) {
    const char* strategy = "BiologicalThreshold";
    if (result.strategy == CalibrationStrategy::GeneralTheta) strategy = "GeneralTheta";
    if (result.strategy == CalibrationStrategy::WeightedForm) strategy = "WeightedForm";
    return json{{"kappa", result.kappa},
                {"lambda", result.lambda},
                {"theta", result.theta},
                {"strategy", strategy}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::string>& names) {
    const std::size_t n = traj.dimension();
    os << "t";
    for (std::size_t i = 0; i < n; ++i)
        os << "," << (i < names.size() && !names[i].empty()
                          ? names[i]
                          : "x" + std::to_string(i + 1));
    os << "\n";
    os.precision(17);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << traj.times[k];
        for (std::size_t i = 0; i < n; ++i) os << "," << traj.states[k][i];
        os << "\n";
    }
}

void save_trajectory_csv(const std::string& path, const Trajectory& traj,
                         const std::vector<std::string>& names) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write trajectory file: " + path);
    write_trajectory_csv(out, traj, names);
}

Trajectory read_trajectory_csv(std::istream& is) {
    Trajectory traj;
    std::string line;
    if (!std::getline(is, line)) throw DomainError("trajectory CSV: empty input");
    if (line.rfind("t,", 0) != 0 && line != "t")
        throw DomainError("trajectory CSV: header must start with \"t\"");
    std::size_t cols = 0;
    for (char c : line)
        if (c == ',') ++cols;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, ',')) break;
        traj.times.push_back(std::stod(cell));
        std::vector<double> state;
        while (std::getline(row, cell, ',')) state.push_back(std::stod(cell));
        if (state.size() != cols)
            throw DomainError("trajectory CSV: inconsistent column count");
        traj.states.push_back(std::move(state));
    }
    if (traj.times.empty()) throw DomainError("trajectory CSV: no data rows");
    return traj;
}

Trajectory load_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open trajectory file: " + path);
    return read_trajectory_csv(in);
}

} // namespace grn
