#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "grn/analysis.hpp"
#include "grn/calibration.hpp"
#include "grn/dynamics.hpp"
#include "grn/network.hpp"

namespace grn {

// Model file schema:
//   {
//     "units": {"time": "...", "concentration": "..."},   (optional, informational)
//     "genes": [
//       {"name": "...", "kappa": r, "gamma": r,
//        "edges": [{"source": i, "family": "logistic"|"hill",
//                   "steepness_or_n": r, "theta": r,
//                   "orientation": "activation"|"repression",
//                   "delay": r,            (optional, default 0)
//                   "scaled": bool}]}      (optional; repression only, folds
//     ]                                     the (1+e^{-lambda*theta}) factor
//   }                                       into the gene's kappa)
// Unknown fields anywhere are rejected.
Network network_from_json(const nlohmann::json& doc);
nlohmann::json network_to_json(const Network& net);

Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

nlohmann::json to_json(const LipschitzReport& rep);
nlohmann::json to_json(const EquilibriumReport& rep);
nlohmann::json to_json(const BistabilityReport& rep);
nlohmann::json to_json(const HopfReport& rep);
nlohmann::json to_json(const CalibrationResult& result);

// Trajectory CSV: header "t,<names>", one row per stored sample,
// 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::string>& names);
void save_trajectory_csv(const std::string& path, const Trajectory& traj,
                         const std::vector<std::string>& names);
Trajectory read_trajectory_csv(std::istream& is);
Trajectory load_trajectory_csv(const std::string& path);

} // namespace grn
