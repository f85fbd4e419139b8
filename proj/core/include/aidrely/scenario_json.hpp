#pragma once

// Scenario document codec. Parsing is strict: unknown keys, missing keys and
// wrongly typed values are all reported as violations.
//
//   {"aid": {"p_advice_correct": 0.7},
//    "user": {"p_unaided_correct": 0.6, "p_post_reject_correct": 0.4},
//    "policy": {"type": "indiscriminate", "p_accept": 0.5},
//    "dependency": {"type": "independent"},
//    "degradation_mode": "fixed_rate"}            // optional

#include <optional>

#include <nlohmann/json.hpp>

#include "aidrely/model.hpp"

namespace aidrely {

struct ScenarioValidation {
  std::optional<Scenario> scenario;  // set iff report.ok()
  ValidationReport report;
};

/// Checks every type invariant and cross-field bound, collecting all
/// violations rather than stopping at the first.
ScenarioValidation validate_scenario(const nlohmann::json& raw);

/// Throws ValidationError when the document is invalid.
Scenario scenario_from_json(const nlohmann::json& raw);

/// Canonical form: every key present, degradation_mode explicit.
nlohmann::json to_json(const Scenario& scenario);

}  // namespace aidrely
