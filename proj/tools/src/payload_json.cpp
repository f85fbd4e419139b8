#include "aidrely/cli/payload_json.hpp"

#include <algorithm>
#include <stdexcept>

#include "aidrely/cli/format.hpp"
#include "aidrely/scenario_json.hpp"
#include "aidrely/version.hpp"

namespace aidrely::cli {

namespace {

json outcome_cells(const std::array<double, OutcomeTable::kCells>* mass,
                   const std::array<std::uint64_t, OutcomeTable::kCells>* counts) {
  json cells = json::array();
  for (bool advice : {true, false}) {
    for (bool accepted : {true, false}) {
      for (bool final_correct : {true, false}) {
        const auto i = OutcomeTable::index(advice, accepted, final_correct);
        json cell = {{"advice_correct", advice}, {"accepted_or_used", accepted}, {"final_correct", final_correct}};
        if (mass != nullptr) cell["p"] = round_output((*mass)[i]);
        if (counts != nullptr) cell["count"] = (*counts)[i];
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

std::size_t cell_index(const json& cell) {
  return OutcomeTable::index(cell.at("advice_correct").get<bool>(), cell.at("accepted_or_used").get<bool>(),
                             cell.at("final_correct").get<bool>());
}

PolicyKind policy_kind_from_json(const json& j) {
  const auto name = j.get<std::string>();
  const auto kind = policy_kind_from_string(name);
  if (!kind) throw std::invalid_argument("unknown policy '" + name + "'");
  return *kind;
}

}  // namespace

json make_envelope(std::string_view command, const Scenario& scenario, json result,
                   const std::vector<std::string>& notes) {
  return {{"tool_version", kVersion},
          {"command", std::string(command)},
          {"scenario", aidrely::to_json(scenario)},
          {"result", std::move(result)},
          {"notes", notes}};
}

json to_json(const EvalResult& r) {
  return {{"p_correct_aided", round_output(r.p_correct_aided.value())},
          {"p_accept_marginal", round_output(r.p_accept_marginal.value())},
          {"outcome_table", outcome_cells(&r.outcome_table.cells(), nullptr)},
          {"notes", r.notes}};
}

EvalResult eval_result_from_json(const json& doc) {
  EvalResult r;
  r.p_correct_aided = Probability(doc.at("p_correct_aided").get<double>());
  r.p_accept_marginal = Probability(doc.at("p_accept_marginal").get<double>());
  for (const auto& cell : doc.at("outcome_table")) {
    r.outcome_table.set(cell.at("advice_correct").get<bool>(), cell.at("accepted_or_used").get<bool>(),
                        cell.at("final_correct").get<bool>(), cell.at("p").get<double>());
  }
  r.notes = doc.at("notes").get<std::vector<std::string>>();
  return r;
}

json to_json(const PolicyComparison& cmp) {
  json entries = json::array();
  for (const auto& e : cmp.entries) {
    entries.push_back({{"policy", std::string(to_string(e.policy))},
                       {"margin", round_output(e.margin)},
                       {"result", to_json(e.result)}});
  }
  json tied = json::array();
  for (auto k : cmp.tied) tied.push_back(std::string(to_string(k)));
  return {{"best_policy", std::string(to_string(cmp.best_policy))},
          {"tied", std::move(tied)},
          {"entries", std::move(entries)},
          {"notes", cmp.notes}};
}

PolicyComparison policy_comparison_from_json(const json& doc) {
  PolicyComparison cmp;
  cmp.best_policy = policy_kind_from_json(doc.at("best_policy"));
  for (const auto& t : doc.at("tied")) cmp.tied.push_back(policy_kind_from_json(t));
  for (const auto& e : doc.at("entries")) {
    cmp.entries.push_back(
        {policy_kind_from_json(e.at("policy")), eval_result_from_json(e.at("result")), e.at("margin").get<double>()});
  }
  cmp.notes = doc.at("notes").get<std::vector<std::string>>();
  return cmp;
}

json to_json(const SimEstimate& est) {
  std::array<double, OutcomeTable::kCells> freq{};
  for (std::size_t i = 0; i < freq.size(); ++i) {
    freq[i] = static_cast<double>(est.outcome_counts[i]) / static_cast<double>(est.n_trials);
  }
  json cells = outcome_cells(&freq, &est.outcome_counts);
  return {{"p_hat", round_output(est.p_hat.value())},
          {"n_trials", est.n_trials},
          {"std_err", round_output(est.std_err)},
          {"ci95", {round_output(est.ci95.first), round_output(est.ci95.second)}},
          {"seed", est.seed},
          {"shards", est.shards},
          {"outcome_counts", std::move(cells)},
          {"advice_correct_count", est.advice_correct_count},
          {"user_correct_count", est.user_correct_count},
          {"accepted_count", est.accepted_count},
          {"attended_count", est.attended_count}};
}

SimEstimate sim_estimate_from_json(const json& doc) {
  SimEstimate est;
  est.p_hat = Probability(doc.at("p_hat").get<double>());
  est.n_trials = doc.at("n_trials").get<std::uint64_t>();
  est.std_err = doc.at("std_err").get<double>();
  est.ci95 = {doc.at("ci95").at(0).get<double>(), doc.at("ci95").at(1).get<double>()};
  est.seed = doc.at("seed").get<std::uint64_t>();
  est.shards = doc.at("shards").get<std::uint32_t>();
  for (const auto& cell : doc.at("outcome_counts")) {
    est.outcome_counts[cell_index(cell)] = cell.at("count").get<std::uint64_t>();
  }
  est.advice_correct_count = doc.at("advice_correct_count").get<std::uint64_t>();
  est.user_correct_count = doc.at("user_correct_count").get<std::uint64_t>();
  est.accepted_count = doc.at("accepted_count").get<std::uint64_t>();
  est.attended_count = doc.at("attended_count").get<std::uint64_t>();
  return est;
}

json to_json(const Breakeven& b) {
  return {{"d_star", b.d_star ? json(round_output(*b.d_star)) : json("unattainable")},
          {"target", round_output(b.target)},
          {"eq2_at_d_star", b.eq2_at_d_star ? json(round_output(*b.eq2_at_d_star)) : json(nullptr)},
          {"eq2_at_half", round_output(b.eq2_at_half)},
          {"eq2_at_one", round_output(b.eq2_at_one)}};
}

Breakeven breakeven_from_json(const json& doc) {
  Breakeven b;
  if (const auto& d = doc.at("d_star"); d.is_number()) {
    b.d_star = d.get<double>();
  } else if (d != "unattainable") {
    throw std::invalid_argument("d_star must be a number or \"unattainable\"");
  }
  b.target = doc.at("target").get<double>();
  if (const auto& v = doc.at("eq2_at_d_star"); !v.is_null()) b.eq2_at_d_star = v.get<double>();
  b.eq2_at_half = doc.at("eq2_at_half").get<double>();
  b.eq2_at_one = doc.at("eq2_at_one").get<double>();
  return b;
}

std::vector<double> unaided_crossings(const SweepSeries& s) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < s.accuracies.size(); ++i) {
    const double g0 = s.accuracies[i].value() - s.unaided_reference[i].value();
    const double g1 = s.accuracies[i + 1].value() - s.unaided_reference[i + 1].value();
    if (g0 == 0.0) {
      out.push_back(s.parameter_values[i]);
    } else if ((g0 < 0.0) != (g1 < 0.0) && g1 != 0.0) {
      const double x0 = s.parameter_values[i], x1 = s.parameter_values[i + 1];
      out.push_back(x0 + (x1 - x0) * g0 / (g0 - g1));
    }
  }
  if (!s.accuracies.empty() && s.accuracies.back().value() == s.unaided_reference.back().value()) {
    out.push_back(s.parameter_values.back());
  }
  return out;
}

json sweep_summary(const SweepSeries& s, const std::string& csv_path) {
  const auto [lo, hi] = std::minmax_element(s.accuracies.begin(), s.accuracies.end());
  json crossings = json::array();
  for (double x : unaided_crossings(s)) crossings.push_back(round_output(x));
  return {{"parameter_path", s.parameter_path},
          {"steps", s.parameter_values.size()},
          {"from", round_output(s.parameter_values.front())},
          {"to", round_output(s.parameter_values.back())},
          {"csv", csv_path},
          {"min_accuracy", round_output(lo->value())},
          {"max_accuracy", round_output(hi->value())},
          {"argmax_param_value", round_output(s.parameter_values[static_cast<std::size_t>(hi - s.accuracies.begin())])},
          {"unaided_crossings", std::move(crossings)}};
}

}  // namespace aidrely::cli
