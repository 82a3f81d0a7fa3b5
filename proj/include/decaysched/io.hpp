#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "decaysched/bounds.hpp"
#include "decaysched/dp.hpp"
#include "decaysched/generators.hpp"
#include "decaysched/model.hpp"

namespace decaysched {

// Instance document:
//   {"processors": N, "horizon": H,            // horizon optional
//    "jobs": [{"pmf": [p1, ..., pT],
//              "decay": {"kind": "step" | "linear" | "exponential",
//                        "params": {"b": 0.8, "c": 3}}
//            | {"kind": "piecewise_linear",
//               "params": {"knots": [[0, 0.9], [3, 0.85], ...],
//                          "hold_until": 144}}}]}
nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const DecayFunction& decay);
DecayFunction decay_from_json(const nlohmann::json& doc);

// Scenario document (all keys but J/N/T optional):
//   {"name": "...", "J": 5, "N": 2, "T": 5,
//    "pmf_mode": "uniform|decreasing|increasing|bathtub|heterogeneous|lognormal",
//    "decay_mode": "step|linear|exponential|heterogeneous|piecewise_linear",
//    "a_mode": "fixed|random", "a": 1.0, "seed": 1,
//    "lognormal": {"ell": 60, "m_min": 1, "m_max": 4,
//                  "s_min": 1, "s_max": 1.25, "delta": 10}}
nlohmann::json to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const CanonicalState& state);
// Value and policy tables of a solve, for debugging.
nlohmann::json tables_to_json(const SolveResult& result);

// Reads and parses a JSON file; errors surface as InvalidInput.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace decaysched
