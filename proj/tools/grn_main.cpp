#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grn/analysis.hpp"
#include "grn/calibration.hpp"
#include "grn/dynamics.hpp"
#include "grn/model_io.hpp"
#include "grn/network.hpp"
#include "grn/presets.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;   // bad flags / files / parameters
constexpr int kExitNumeric = 3; // integration or solver failure
constexpr int kExitMode = 4;    // mode/model mismatch

std::vector<double> parse_vector(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        size_t pos = 0;
        v.push_back(std::stod(cell, &pos));
        if (pos != cell.size()) throw grn::DomainError("bad number: " + cell);
    }
    if (v.empty()) throw grn::DomainError("empty vector argument");
    return v;
}

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw grn::DomainError("cannot write " + out_path);
        f << report.dump(2) << "\n";
    }
}

struct SimulateArgs {
    std::string model_path, preset, out_csv, x0_str;
    double t_end = -1.0, rtol = 1e-8, atol = 1e-10, max_step = 0.0;
    int escape_component = -1;
    double escape_level = 1.0;
};

int run_simulate(const SimulateArgs& a) {
    grn::Scenario sc;
    if (!a.preset.empty()) {
        sc = grn::make_preset(a.preset);
    } else if (!a.model_path.empty()) {
        sc.network = grn::load_network(a.model_path);
        sc.state_names = sc.network->names;
        sc.x0.assign(sc.network->size(), 0.0);
        sc.config.t_end = 10.0;
    } else {
        throw grn::DomainError("simulate: a model file or --preset is required");
    }
    if (!a.x0_str.empty()) sc.x0 = parse_vector(a.x0_str);
    if (a.t_end > 0.0) sc.config.t_end = a.t_end;
    if (a.max_step > 0.0) sc.config.max_step = a.max_step;
    sc.config.rel_tol = a.rtol;
    sc.config.abs_tol = a.atol;

    grn::Trajectory traj;
    if (sc.network) {
        if (sc.x0.size() != sc.network->size())
            throw grn::DomainError("simulate: x0 dimension mismatch");
        traj = sc.network->delayed()
                   ? grn::simulate_dde(*sc.network, grn::History::constant(sc.x0),
                                       sc.config)
                   : grn::simulate_ode(*sc.network, sc.x0, sc.config);
    } else {
        traj = grn::integrate(sc.custom_rhs, sc.x0, sc.config);
    }

    if (!a.out_csv.empty()) grn::save_trajectory_csv(a.out_csv, traj, sc.state_names);

    std::cout.precision(10);
    std::cout << "t_end " << traj.t_end() << " terminal";
    for (double v : traj.states.back()) std::cout << " " << v;
    std::cout << "\n";

    int esc_comp = a.escape_component;
    if (esc_comp < 0 && sc.name.rfind("autoreg", 0) == 0) esc_comp = 1; // protein
    if (esc_comp >= 0) {
        const auto t =
            grn::measure_escape_time(traj, static_cast<std::size_t>(esc_comp),
                                     a.escape_level);
        if (t)
            std::cout << "escape_time " << *t << "\n";
        else
            std::cout << "escape_time none\n";
    }
    return kExitOk;
}

struct AnalyzeArgs {
    std::string model_path, preset, mode, out_path, guess_str, family = "logistic";
    double tol = 1e-10, lambda = 0.0, theta = 0.0, n = 0.0, alpha = 0.0;
    int k_max = 0;
};

int run_analyze(const AnalyzeArgs& a) {
    std::optional<grn::Network> net;
    if (!a.preset.empty()) {
        auto sc = grn::make_preset(a.preset);
        if (!sc.network)
            throw grn::UnsupportedError("analyze: preset has no network model");
        net = sc.network;
    } else if (!a.model_path.empty()) {
        net = grn::load_network(a.model_path);
    }

    if (a.mode == "equilibria") {
        if (!net) throw grn::DomainError("analyze: model required for equilibria");
        if (net->delayed())
            throw grn::UnsupportedError("analyze: equilibria needs a non-delayed model");
        std::vector<double> guess(net->size(), 1.0);
        if (!a.guess_str.empty()) guess = parse_vector(a.guess_str);
        emit(grn::to_json(grn::find_equilibrium(*net, guess, a.tol)), a.out_path);
    } else if (a.mode == "lipschitz") {
        if (!net) throw grn::DomainError("analyze: model required for lipschitz");
        emit(grn::to_json(grn::lipschitz_bounds(*net)), a.out_path);
    } else if (a.mode == "bistability") {
        if (a.family == "logistic") {
            if (!(a.lambda > 0.0) || !(a.theta > 0.0))
                throw grn::DomainError("bistability: --lambda and --theta required");
            auto rep = grn::logistic_saddle_nodes(a.lambda, a.theta);
            if (a.alpha > 0.0) {
                auto fps = grn::autoreg_fixed_points(
                    grn::LogisticSpec{a.lambda, a.theta, grn::Orientation::Increasing},
                    a.alpha);
                fps.alpha_crit_lower = rep.alpha_crit_lower;
                fps.alpha_crit_upper = rep.alpha_crit_upper;
                fps.tangency_z = rep.tangency_z;
                rep = fps;
            }
            emit(grn::to_json(rep), a.out_path);
        } else if (a.family == "hill") {
            if (!(a.n > 0.0) || !(a.theta > 0.0))
                throw grn::DomainError("bistability: --n and --theta required");
            json j;
            if (a.n > 1.0) {
                const auto [xc, ac] = grn::hill_alpha_crit(a.n, a.theta);
                j["x_crit"] = xc;
                j["alpha_crit"] = ac;
            }
            if (a.alpha > 0.0) {
                auto rep = grn::autoreg_fixed_points(
                    grn::HillSpec{a.n, a.theta, grn::Orientation::Increasing}, a.alpha);
                j.update(grn::to_json(rep));
            }
            emit(j, a.out_path);
        } else {
            throw grn::DomainError("bistability: family must be logistic or hill");
        }
    } else if (a.mode == "hopf") {
        if (!net) throw grn::DomainError("analyze: model required for hopf");
        if (net->size() != 1 || !net->delayed())
            throw grn::UnsupportedError("analyze: hopf needs a scalar delayed model");
        const auto& g = net->genes[0];
        if (g.edges.size() != 1)
            throw grn::UnsupportedError("analyze: hopf needs one self-repression edge");
        const auto* spec = std::get_if<grn::LogisticSpec>(&g.edges[0].response);
        if (!spec || spec->orientation != grn::Orientation::Decreasing)
            throw grn::UnsupportedError("analyze: hopf needs a decreasing logistic edge");
        emit(grn::to_json(grn::hopf_critical_delay(g.production, g.degradation, *spec,
                                                   a.k_max)),
             a.out_path);
    } else {
        throw grn::DomainError("analyze: unknown --mode " + a.mode);
    }
    return kExitOk;
}

struct CalibrateArgs {
    double g = 0.0, g_cross = 0.0, theta = 0.0;
    bool weighted = false;
    std::string fit_path, out_path;
};

int run_calibrate(const CalibrateArgs& a) {
    if (!a.fit_path.empty()) {
        std::ifstream in(a.fit_path);
        if (!in) throw grn::DomainError("cannot open fit problem: " + a.fit_path);
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw grn::DomainError(std::string("fit problem parse error: ") + e.what());
        }
        grn::FitProblem problem;
        problem.network = grn::network_from_json(doc.at("model"));
        problem.data = grn::load_trajectory_csv(doc.at("data_csv").get<std::string>());
        std::vector<double> guess;
        for (const auto& jp : doc.at("free")) {
            grn::ParamRef p;
            const std::string kind = jp.at("kind").get<std::string>();
            if (kind == "kappa") p.kind = grn::ParamRef::Kind::GeneKappa;
            else if (kind == "gamma") p.kind = grn::ParamRef::Kind::GeneGamma;
            else if (kind == "lambda") p.kind = grn::ParamRef::Kind::EdgeSteepness;
            else if (kind == "theta") p.kind = grn::ParamRef::Kind::EdgeTheta;
            else throw grn::DomainError("fit problem: unknown parameter kind " + kind);
            p.gene = jp.at("gene").get<std::size_t>();
            p.edge = jp.value("edge", 0u);
            problem.free_params.push_back(p);
            guess.push_back(jp.at("initial").get<double>());
        }
        if (doc.contains("weights"))
            problem.weights = doc["weights"].get<std::vector<double>>();
        const auto result = grn::fit_least_squares(problem, guess);
        emit(json{{"parameters", result.parameters},
                  {"sse", result.sse},
                  {"iterations", result.iterations}},
             a.out_path);
        return kExitOk;
    }
    if (!(a.g > 0.0)) throw grn::DomainError("calibrate: --g must be positive");
    grn::CalibrationResult result;
    if (a.weighted) {
        result = grn::derive_weighted_params(grn::LinearActivationSpec{a.g, 1.0});
    } else {
        if (!(a.g_cross > 0.0))
            throw grn::DomainError("calibrate: --g-cross must be positive");
        grn::LinearActivationSpec spec{a.g, a.g_cross};
        result = a.theta > 0.0 ? grn::derive_activation_params_general(spec, a.theta)
                               : grn::derive_activation_params(spec);
    }
    emit(grn::to_json(result), a.out_path);
    return kExitOk;
}

int run_convert(const std::string& hill_arg, const std::string& out_path) {
    // --hill n,theta,orientation
    std::stringstream ss(hill_arg);
    std::string n_s, th_s, orient_s;
    if (!std::getline(ss, n_s, ',') || !std::getline(ss, th_s, ',') ||
        !std::getline(ss, orient_s))
        throw grn::DomainError("convert: --hill expects n,theta,orientation");
    grn::Orientation orient;
    if (orient_s == "activation") orient = grn::Orientation::Increasing;
    else if (orient_s == "repression") orient = grn::Orientation::Decreasing;
    else throw grn::DomainError("convert: orientation must be activation or repression");
    grn::HillSpec hill{std::stod(n_s), std::stod(th_s), orient};
    hill.validate();
    const grn::LogisticSpec logi = grn::match_steepness(hill);

    double max_dev = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double x = 4.0 * hill.threshold * k / 1000.0;
        max_dev = std::max(max_dev, std::fabs(grn::hill_eval(hill, x) -
                                              grn::logistic_eval(logi, x)));
    }
    emit(json{{"steepness", logi.steepness},
              {"theta", logi.threshold},
              {"orientation", orient_s},
              {"max_abs_deviation_on_0_4theta", max_dev}},
         out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gene regulatory network toolkit: simulate, analyze, calibrate"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "integrate a model or preset");
    c_sim->add_option("model", sim.model_path, "model JSON file");
    c_sim->add_option("--preset", sim.preset, "builtin scenario");
    c_sim->add_option("--x0", sim.x0_str, "initial state a,b,...");
    c_sim->add_option("--t-end", sim.t_end, "integration horizon");
    c_sim->add_option("--rtol", sim.rtol, "relative tolerance");
    c_sim->add_option("--atol", sim.atol, "absolute tolerance");
    c_sim->add_option("--max-step", sim.max_step, "step-size cap");
    c_sim->add_option("--out", sim.out_csv, "trajectory CSV path");
    c_sim->add_option("--escape-component", sim.escape_component,
                      "report first crossing of this component");
    c_sim->add_option("--escape-level", sim.escape_level, "crossing level");

    AnalyzeArgs an;
    auto* c_an = app.add_subcommand("analyze", "equilibria, bounds, bifurcations");
    c_an->add_option("model", an.model_path, "model JSON file");
    c_an->add_option("--preset", an.preset, "builtin scenario");
    c_an->add_option("--mode", an.mode, "equilibria|lipschitz|bistability|hopf")
        ->required();
    c_an->add_option("--guess", an.guess_str, "equilibrium guess a,b,...");
    c_an->add_option("--tol", an.tol, "Newton residual tolerance");
    c_an->add_option("--family", an.family, "bistability family (logistic|hill)");
    c_an->add_option("--lambda", an.lambda, "logistic steepness");
    c_an->add_option("--n", an.n, "Hill coefficient");
    c_an->add_option("--theta", an.theta, "threshold");
    c_an->add_option("--alpha", an.alpha, "loop gain for fixed-point listing");
    c_an->add_option("--k-max", an.k_max, "number of extra Hopf branches");
    c_an->add_option("--out", an.out_path, "report path (default stdout)");

    CalibrateArgs cal;
    auto* c_cal = app.add_subcommand("calibrate", "derive or fit logistic parameters");
    c_cal->add_option("--g", cal.g, "basal production rate");
    c_cal->add_option("--g-cross", cal.g_cross, "cross-activation strength");
    c_cal->add_option("--theta", cal.theta, "explicit threshold (general strategy)");
    c_cal->add_flag("--weighted", cal.weighted, "weighted-input formulation");
    c_cal->add_option("--fit", cal.fit_path, "least-squares fit problem JSON");
    c_cal->add_option("--out", cal.out_path, "report path (default stdout)");

    std::string hill_arg, convert_out;
    auto* c_conv = app.add_subcommand("convert", "Hill to slope-matched logistic");
    c_conv->add_option("--hill", hill_arg, "n,theta,orientation")->required();
    c_conv->add_option("--out", convert_out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_an->parsed()) return run_analyze(an);
        if (c_cal->parsed()) return run_calibrate(cal);
        if (c_conv->parsed()) return run_convert(hill_arg, convert_out);
    } catch (const grn::UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMode;
    } catch (const grn::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const grn::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
