#include "aidrely/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "aidrely/analytic.hpp"
#include "aidrely/scenario_json.hpp"

namespace aidrely {

namespace {

constexpr const char* kAid = "aid.p_advice_correct";
constexpr const char* kUnaided = "user.p_unaided_correct";
constexpr const char* kPostReject = "user.p_post_reject_correct";
constexpr const char* kAccept = "policy.p_accept";
constexpr const char* kAcceptCorrect = "policy.p_accept_given_correct";
constexpr const char* kAcceptWrong = "policy.p_accept_given_wrong";
constexpr const char* kIgnoreCorrect = "policy.p_ignore_given_user_correct";
constexpr const char* kUseWrong = "policy.p_use_given_user_wrong";
constexpr const char* kBoth = "dependency.p_both_correct";

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

using Params = std::map<std::string, double>;

struct Model {
  Params params;
  std::function<double(const Params&)> accuracy;
  Params partials;
};

Model attended_model(const Scenario& s, bool indiscriminate) {
  Model m;
  Params& p = m.params;
  p[kAid] = s.aid().p_advice_correct.value();
  if (indiscriminate) {
    p[kAccept] = std::get<policy::Indiscriminate>(s.policy()).p_accept.value();
  } else {
    const auto& d = std::get<policy::Discriminating>(s.policy());
    p[kAcceptCorrect] = d.p_accept_given_correct.value();
    p[kAcceptWrong] = d.p_accept_given_wrong.value();
  }

  const bool fixed = s.degradation_mode() == DegradationMode::kFixedRate;
  const auto dep = s.dependency();
  if (fixed) {
    p[kPostReject] = s.user().p_post_reject_correct.value();
  } else {
    p[kUnaided] = s.user().p_unaided_correct.value();
    if (const auto* j = std::get_if<dependency::Joint>(&dep)) p[kBoth] = j->p_both_correct.value();
  }

  const auto acceptance = [indiscriminate](const Params& q) {
    if (indiscriminate) return std::pair{q.at(kAccept), q.at(kAccept)};
    return std::pair{q.at(kAcceptCorrect), q.at(kAcceptWrong)};
  };

  m.accuracy = [=](const Params& q) {
    const auto [ac, aw] = acceptance(q);
    const double pa = q.at(kAid);
    if (fixed) return formula::discriminating(pa, ac, aw, q.at(kPostReject), q.at(kPostReject));
    const double pu = q.at(kUnaided);
    double both = pa * pu;
    if (std::holds_alternative<dependency::Joint>(dep)) both = q.at(kBoth);
    if (std::holds_alternative<dependency::Dominant>(dep)) both = pu;
    const auto [uc, uw] = formula::conditional_rates(pa, pu, both);
    return formula::discriminating(pa, ac, aw, uc, uw);
  };

  // Partials with respect to ac and aw; the aid and user partials follow.
  const auto [ac, aw] = acceptance(p);
  const double pa = p[kAid];
  double d_ac = 0.0, d_aw = 0.0;
  if (fixed) {
    const double r = p[kPostReject];
    m.partials[kAid] = ac + r * (1.0 - ac) - r * (1.0 - aw);
    m.partials[kPostReject] = (1.0 - ac) * pa + (1.0 - aw) * (1.0 - pa);
    d_ac = pa * (1.0 - r);
    d_aw = -(1.0 - pa) * r;
  } else if (std::holds_alternative<dependency::Independent>(dep)) {
    const double pu = p[kUnaided];
    m.partials[kAid] = ac + pu * (aw - ac);
    m.partials[kUnaided] = (1.0 - ac) * pa + (1.0 - aw) * (1.0 - pa);
    d_ac = pa * (1.0 - pu);
    d_aw = -(1.0 - pa) * pu;
  } else if (std::holds_alternative<dependency::Joint>(dep)) {
    const double pu = p[kUnaided];
    const double both = p[kBoth];
    m.partials[kAid] = ac;
    m.partials[kUnaided] = 1.0 - aw;
    m.partials[kBoth] = aw - ac;
    d_ac = pa - both;
    d_aw = -(pu - both);
  } else {
    const double pu = p[kUnaided];
    m.partials[kAid] = ac;
    m.partials[kUnaided] = 1.0 - ac;
    d_ac = pa - pu;
    d_aw = 0.0;
  }
  if (indiscriminate) {
    m.partials[kAccept] = d_ac + d_aw;
  } else {
    m.partials[kAcceptCorrect] = d_ac;
    m.partials[kAcceptWrong] = d_aw;
  }
  return m;
}

Model self_gated_model(const Scenario& s) {
  if (!std::holds_alternative<dependency::Independent>(s.dependency())) {
    throw AnalyticFormUnavailable("sensitivity of self_gated accuracy needs an independent dependency");
  }
  const auto& g = std::get<policy::SelfGated>(s.policy());
  Model m;
  m.params = {{kAid, s.aid().p_advice_correct.value()},
              {kUnaided, s.user().p_unaided_correct.value()},
              {kIgnoreCorrect, g.p_ignore_given_user_correct.value()},
              {kUseWrong, g.p_use_given_user_wrong.value()}};
  m.accuracy = [](const Params& q) {
    return formula::self_gated(q.at(kAid), q.at(kUnaided), q.at(kIgnoreCorrect), q.at(kUseWrong));
  };
  const double pa = m.params[kAid], pu = m.params[kUnaided];
  const double gc = m.params[kIgnoreCorrect], gw = m.params[kUseWrong];
  m.partials = {{kAid, (1.0 - gc) * pu + gw * (1.0 - pu)},
                {kUnaided, gc + pa * (1.0 - gc) - pa * gw},
                {kIgnoreCorrect, pu * (1.0 - pa)},
                {kUseWrong, pa * (1.0 - pu)}};
  return m;
}

Model model_for(const Scenario& s) {
  switch (s.policy_kind()) {
    case PolicyKind::kRoutineAccept: {
      Model m;
      m.params = {{kAid, s.aid().p_advice_correct.value()}};
      m.accuracy = [](const Params& q) { return q.at(kAid); };
      m.partials = {{kAid, 1.0}};
      return m;
    }
    case PolicyKind::kRoutineIgnore: {
      Model m;
      m.params = {{kUnaided, s.user().p_unaided_correct.value()}};
      m.accuracy = [](const Params& q) { return q.at(kUnaided); };
      m.partials = {{kUnaided, 1.0}};
      return m;
    }
    case PolicyKind::kIndiscriminate: return attended_model(s, true);
    case PolicyKind::kDiscriminating: return attended_model(s, false);
    case PolicyKind::kSelfGated: return self_gated_model(s);
  }
  throw UsageError("unknown policy variant");
}

}  // namespace

const std::vector<std::string>& sweepable_paths() {
  static const std::vector<std::string> paths = {kAid,           kUnaided,       kPostReject, kAccept, kAcceptCorrect,
                                                 kAcceptWrong, kIgnoreCorrect, kUseWrong,   kBoth};
  return paths;
}

std::vector<double> sweep_grid(double from, double to, std::size_t steps) {
  if (steps < 2) throw SweepError(SweepError::Kind::kBadGrid, "sweep grid needs at least 2 steps");
  if (!std::isfinite(from) || !std::isfinite(to)) {
    throw SweepError(SweepError::Kind::kBadGrid, "sweep bounds must be finite");
  }
  std::vector<double> grid(steps);
  const double span = to - from;
  for (std::size_t i = 0; i + 1 < steps; ++i) {
    grid[i] = from + span * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  grid.back() = to;
  return grid;
}

Scenario with_parameter(const Scenario& base, const std::string& path, double value) {
  const auto& known = sweepable_paths();
  if (std::find(known.begin(), known.end(), path) == known.end()) {
    throw SweepError(SweepError::Kind::kUnknownPath, "unknown parameter path '" + path + "'");
  }
  auto doc = to_json(base);
  if (base.degradation_mode_defaulted()) doc.erase("degradation_mode");

  const auto dot = path.find('.');
  const auto section = path.substr(0, dot);
  const auto leaf = path.substr(dot + 1);
  auto& obj = doc.at(section);
  if (!obj.contains(leaf)) {
    const auto variant = obj.value("type", std::string("?"));
    throw SweepError(SweepError::Kind::kPathNotApplicable,
                     "parameter path '" + path + "' not applicable to " + section + " variant '" + variant + "'");
  }
  obj[leaf] = value;
  return scenario_from_json(doc);
}

SweepSeries run_sweep(const SweepSpec& spec) {
  const auto grid = sweep_grid(spec.from, spec.to, spec.steps);

  std::vector<Scenario> points;
  points.reserve(grid.size());
  for (double v : grid) {
    try {
      points.push_back(with_parameter(spec.base, spec.parameter_path, v));
    } catch (const ValidationError& e) {
      throw SweepError(SweepError::Kind::kInvalidValue,
                       "swept value " + format_value(v) + " for '" + spec.parameter_path +
                           "' gives an invalid scenario:\n" + e.report().to_string(),
                       v);
    }
  }

  SweepSeries series;
  series.parameter_path = spec.parameter_path;
  series.parameter_values = grid;
  for (const auto& s : points) {
    series.accuracies.push_back(evaluate(s).p_correct_aided);
    series.unaided_reference.push_back(s.user().p_unaided_correct);
    series.routine_accept_reference.push_back(s.aid().p_advice_correct);
  }
  return series;
}

std::map<std::string, PartialDerivative> sensitivity(const Scenario& s) {
  const auto model = model_for(s);
  std::map<std::string, PartialDerivative> out;
  for (const auto& [name, analytic] : model.partials) {
    auto up = model.params;
    auto down = model.params;
    up[name] += kFiniteDifferenceStep;
    down[name] -= kFiniteDifferenceStep;
    const double fd = (model.accuracy(up) - model.accuracy(down)) / (2.0 * kFiniteDifferenceStep);
    if (std::abs(fd - analytic) > kFiniteDifferenceTolerance) {
      throw std::logic_error("partial for " + name + " disagrees with finite difference: " + format_value(analytic) +
                             " vs " + format_value(fd));
    }
    out[name] = {analytic, fd};
  }
  return out;
}

}  // namespace aidrely
