#pragma once

// JSON payloads emitted by the command-line tool. Reals carry 12 significant
// digits; counts and seeds are exact integers.

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "aidrely/analytic.hpp"
#include "aidrely/simulate.hpp"
#include "aidrely/sweep.hpp"

namespace aidrely::cli {

using nlohmann::json;

/// {"tool_version", "command", "scenario", "result", "notes"}
json make_envelope(std::string_view command, const Scenario& scenario, json result,
                   const std::vector<std::string>& notes);

json to_json(const EvalResult& result);
EvalResult eval_result_from_json(const json& doc);

json to_json(const PolicyComparison& cmp);
PolicyComparison policy_comparison_from_json(const json& doc);

json to_json(const SimEstimate& est);
SimEstimate sim_estimate_from_json(const json& doc);

json to_json(const Breakeven& b);
Breakeven breakeven_from_json(const json& doc);

/// Crossing points of the aided series with the unaided reference, found by
/// linear interpolation between adjacent grid points.
std::vector<double> unaided_crossings(const SweepSeries& series);

json sweep_summary(const SweepSeries& series, const std::string& csv_path);

}  // namespace aidrely::cli
