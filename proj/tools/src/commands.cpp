#include "aidrely/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "aidrely/analytic.hpp"
#include "aidrely/cli/format.hpp"
#include "aidrely/cli/payload_json.hpp"
#include "aidrely/scenario_json.hpp"
#include "aidrely/simulate.hpp"
#include "aidrely/sweep.hpp"
#include "aidrely/version.hpp"

namespace aidrely::cli {

namespace {

struct Options {
  std::string scenario_path;
  std::string format = "json";
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  std::uint32_t shards = 1;
  std::string param;
  double from = 0.0;
  double to = 1.0;
  std::size_t steps = 11;
  std::string out_path;
};

/// Carries an exit code out of a command.
struct CommandFailure {
  int code;
  std::string message;
};

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CommandFailure{kExitIo, "cannot read scenario file '" + path + "'"};
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw CommandFailure{kExitIo, "malformed JSON in '" + path + "': " + e.what()};
  }
  auto validation = validate_scenario(doc);
  if (!validation.scenario) {
    throw CommandFailure{kExitInvalid, "invalid scenario '" + path + "':\n" + validation.report.to_string()};
  }
  return std::move(*validation.scenario);
}

void write_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

std::string csv_row(std::initializer_list<std::string> fields) {
  std::string row;
  for (const auto& f : fields) row += (row.empty() ? "" : ",") + f;
  return row + '\n';
}

std::string cell_column(std::size_t i) {
  // Inverse of OutcomeTable::index.
  const bool advice = i < 4, accepted = (i % 4) < 2, final_correct = (i % 2) == 0;
  return "outcome_advice" + std::to_string(advice) + "_accepted" + std::to_string(accepted) + "_final" +
         std::to_string(final_correct);
}

EvalResult evaluate_or_fail(const Scenario& s) {
  try {
    return evaluate(s);
  } catch (const AnalyticFormUnavailable& e) {
    throw CommandFailure{kExitInvalid, e.what()};
  }
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto scenario = load_scenario(o.scenario_path);
  const auto result = evaluate_or_fail(scenario);
  if (o.format == "csv") {
    out << "metric,value\n";
    out << "p_correct_aided," << format_number(result.p_correct_aided.value()) << '\n';
    out << "p_accept_marginal," << format_number(result.p_accept_marginal.value()) << '\n';
    for (std::size_t i = 0; i < OutcomeTable::kCells; ++i) {
      out << cell_column(i) << ',' << format_number(result.outcome_table.cells()[i]) << '\n';
    }
    return kExitOk;
  }
  write_json(out, make_envelope("eval", scenario, to_json(result), result.notes));
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto scenario = load_scenario(o.scenario_path);
  PolicyComparison cmp;
  try {
    cmp = compare_policies(scenario);
  } catch (const AnalyticFormUnavailable& e) {
    throw CommandFailure{kExitInvalid, e.what()};
  }
  if (o.format == "csv") {
    out << "policy,p_correct_aided,margin,best\n";
    for (const auto& e : cmp.entries) {
      out << csv_row({std::string(to_string(e.policy)), format_number(e.result.p_correct_aided.value()),
                      format_number(e.margin), e.policy == cmp.best_policy ? "1" : "0"});
    }
    return kExitOk;
  }
  auto notes = cmp.notes;
  notes.insert(notes.end(), scenario.warnings().begin(), scenario.warnings().end());
  write_json(out, make_envelope("compare", scenario, to_json(cmp), notes));
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.trials == 0) throw CommandFailure{kExitFlagMisuse, "--trials must be at least 1"};
  if (o.shards == 0) throw CommandFailure{kExitFlagMisuse, "--shards must be at least 1"};
  const auto scenario = load_scenario(o.scenario_path);
  const auto est = estimate_accuracy(scenario, o.trials, o.seed, o.shards);
  if (o.format == "csv") {
    out << "p_hat,n_trials,std_err,ci95_lo,ci95_hi,seed,shards\n";
    out << csv_row({format_number(est.p_hat.value()), std::to_string(est.n_trials), format_number(est.std_err),
                    format_number(est.ci95.first), format_number(est.ci95.second), std::to_string(est.seed),
                    std::to_string(est.shards)});
    return kExitOk;
  }
  write_json(out, make_envelope("simulate", scenario, to_json(est), scenario.warnings()));
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.steps < 2) throw CommandFailure{kExitFlagMisuse, "--steps must be at least 2"};
  const auto scenario = load_scenario(o.scenario_path);

  SweepSeries series;
  try {
    series = run_sweep({scenario, o.param, o.from, o.to, o.steps});
  } catch (const SweepError& e) {
    const int code = e.kind() == SweepError::Kind::kInvalidValue ? kExitInvalid : kExitFlagMisuse;
    throw CommandFailure{code, e.what()};
  } catch (const AnalyticFormUnavailable& e) {
    throw CommandFailure{kExitInvalid, e.what()};
  }

  std::ostringstream csv;
  csv << "param_value,aided_accuracy,unaided_reference,routine_accept_reference\n";
  for (std::size_t i = 0; i < series.parameter_values.size(); ++i) {
    csv << csv_row({format_number(series.parameter_values[i]), format_number(series.accuracies[i].value()),
                    format_number(series.unaided_reference[i].value()),
                    format_number(series.routine_accept_reference[i].value())});
  }

  if (o.out_path.empty()) {
    out << csv.str();
    return kExitOk;
  }
  std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << csv.str()) || !file.flush()) {
    throw CommandFailure{kExitIo, "cannot write '" + o.out_path + "'"};
  }
  write_json(out, make_envelope("sweep", scenario, sweep_summary(series, o.out_path), scenario.warnings()));
  return kExitOk;
}

int cmd_breakeven(const Options& o, std::ostream& out) {
  const auto scenario = load_scenario(o.scenario_path);
  const auto b = breakeven_discrimination(scenario);
  if (o.format == "csv") {
    out << "d_star,target,eq2_at_d_star\n";
    out << csv_row({b.d_star ? format_number(*b.d_star) : "unattainable", format_number(b.target),
                    b.eq2_at_d_star ? format_number(*b.eq2_at_d_star) : ""});
    return kExitOk;
  }
  std::vector<std::string> notes = scenario.warnings();
  notes.push_back("symmetric discrimination: accept_given_correct = d, accept_given_wrong = 1 - d; degradation_mode " +
                  std::string(to_string(scenario.degradation_mode())));
  write_json(out, make_envelope("breakeven", scenario, to_json(b), notes));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Accuracy of a decision maker consulting a fallible decision aid", "aidrely"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Options o;
  const auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("scenario", o.scenario_path, "Scenario JSON file")->required();
  };
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* eval = app.add_subcommand("eval", "Closed-form aided accuracy with outcome decomposition");
  add_scenario(eval);
  add_format(eval);

  auto* compare = app.add_subcommand("compare", "Configured policy against routine accept and routine ignore");
  add_scenario(compare);
  add_format(compare);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of aided accuracy");
  add_scenario(simulate);
  add_format(simulate);
  simulate->add_option("--trials", o.trials, "Number of trials")->capture_default_str();
  simulate->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
  simulate->add_option("--shards", o.shards, "Independent substreams, run in parallel")
      ->capture_default_str()
      ->check(CLI::Range(1u, 4096u));

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write a CSV series");
  add_scenario(sweep);
  sweep->add_option("--param", o.param, "Dot-path of the swept parameter, e.g. policy.p_accept")->required();
  sweep->add_option("--from", o.from, "First grid value")->capture_default_str();
  sweep->add_option("--to", o.to, "Last grid value")->capture_default_str();
  sweep->add_option("--steps", o.steps, "Grid points, at least 2")->capture_default_str();
  sweep->add_option("--out", o.out_path, "CSV output file (stdout when omitted)");

  auto* breakeven = app.add_subcommand("breakeven", "Smallest symmetric discrimination matching the best routine policy");
  add_scenario(breakeven);
  add_format(breakeven);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFlagMisuse;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (breakeven->parsed()) return cmd_breakeven(o, out);
  } catch (const CommandFailure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const ValidationError& e) {
    err << "error: " << e.what();
    return kExitInvalid;
  }
  return kExitFlagMisuse;
}

}  // namespace aidrely::cli
