#include "aidrely/analytic.hpp"

#include <algorithm>
#include <numeric>

namespace aidrely {

namespace formula {

double indiscriminate(double p_advice, double p_accept, double post_reject) noexcept {
  return p_advice * p_accept + post_reject * (1.0 - p_accept);
}

double discriminating(double p_advice, double accept_given_correct, double accept_given_wrong,
                      double post_reject_given_correct, double post_reject_given_wrong) noexcept {
  return accept_given_correct * p_advice + post_reject_given_correct * (1.0 - accept_given_correct) * p_advice +
         post_reject_given_wrong * (1.0 - accept_given_wrong) * (1.0 - p_advice);
}

double self_gated(double p_advice, double p_user, double ignore_given_user_correct,
                  double use_given_user_wrong) noexcept {
  return ignore_given_user_correct * p_user + p_advice * (1.0 - ignore_given_user_correct) * p_user +
         p_advice * use_given_user_wrong * (1.0 - p_user);
}

std::pair<double, double> conditional_rates(double p_advice, double p_user, double p_both) noexcept {
  const double given_correct = p_advice != 0.0 ? p_both / p_advice : 0.0;
  const double given_wrong = p_advice != 1.0 ? (p_user - p_both) / (1.0 - p_advice) : 0.0;
  return {given_correct, given_wrong};
}

}  // namespace formula

double OutcomeTable::total() const noexcept { return std::accumulate(cells_.begin(), cells_.end(), 0.0); }

double OutcomeTable::final_correct_mass() const noexcept {
  double sum = 0.0;
  for (bool advice : {true, false}) {
    for (bool accepted : {true, false}) sum += at(advice, accepted, true);
  }
  return sum;
}

double OutcomeTable::accepted_mass() const noexcept {
  double sum = 0.0;
  for (bool advice : {true, false}) {
    for (bool final_correct : {true, false}) sum += at(advice, true, final_correct);
  }
  return sum;
}

namespace {

void append_scenario_notes(const Scenario& s, bool uses_post_reject_rate, std::vector<std::string>& notes) {
  notes.insert(notes.end(), s.warnings().begin(), s.warnings().end());
  if (!uses_post_reject_rate) return;
  const bool independent = std::holds_alternative<dependency::Independent>(s.dependency());
  if (s.degradation_mode_defaulted()) {
    notes.push_back("degradation_mode defaulted to " + std::string(to_string(s.degradation_mode())) +
                    " for dependency " + std::string(dependency_name(s.dependency())));
  }
  if (!independent && s.degradation_mode() == DegradationMode::kFixedRate) {
    notes.push_back("fixed_rate mode: the dependency does not affect the post-rejection hit rate");
  }
}

EvalResult attended_result(const Scenario& s, double ac, double aw) {
  const double pa = s.aid().p_advice_correct.value();
  const auto rates = post_reject_rates(s.aid(), s.user(), s.dependency(), s.degradation_mode());
  const double uc = rates.given_advice_correct.value();
  const double uw = rates.given_advice_wrong.value();

  EvalResult r;
  auto& t = r.outcome_table;
  t.set(true, true, true, pa * ac);
  t.set(true, false, true, pa * (1.0 - ac) * uc);
  t.set(true, false, false, pa * (1.0 - ac) * (1.0 - uc));
  t.set(false, true, false, (1.0 - pa) * aw);
  t.set(false, false, true, (1.0 - pa) * (1.0 - aw) * uw);
  t.set(false, false, false, (1.0 - pa) * (1.0 - aw) * (1.0 - uw));

  r.p_correct_aided = Probability(formula::discriminating(pa, ac, aw, uc, uw));
  r.p_accept_marginal = Probability(ac * pa + aw * (1.0 - pa));
  append_scenario_notes(s, true, r.notes);
  return r;
}

EvalResult routine_accept_result(const Scenario& s) {
  const double pa = s.aid().p_advice_correct.value();
  EvalResult r;
  r.outcome_table.set(true, true, true, pa);
  r.outcome_table.set(false, true, false, 1.0 - pa);
  r.p_correct_aided = s.aid().p_advice_correct;
  r.p_accept_marginal = Probability(1.0);
  append_scenario_notes(s, false, r.notes);
  return r;
}

EvalResult routine_ignore_result(const Scenario& s) {
  const double pa = s.aid().p_advice_correct.value();
  const double pu = s.user().p_unaided_correct.value();
  const double p11 = s.p_both_correct();
  EvalResult r;
  auto& t = r.outcome_table;
  t.set(true, false, true, p11);
  t.set(true, false, false, pa - p11);
  t.set(false, false, true, pu - p11);
  t.set(false, false, false, 1.0 - pa - pu + p11);
  r.p_correct_aided = s.user().p_unaided_correct;
  r.p_accept_marginal = Probability(0.0);
  append_scenario_notes(s, false, r.notes);
  return r;
}

}  // namespace

ConditionalUserRates post_reject_rates(const AidProfile& aid, const UserProfile& user, const DependencyModel& dep,
                                       DegradationMode mode) {
  if (mode == DegradationMode::kFixedRate) return {user.p_post_reject_correct, user.p_post_reject_correct};
  return conditional_user_rates(aid, user, dep);
}

EvalResult eq1_aided_accuracy(const Scenario& s) {
  const auto* pol = std::get_if<policy::Indiscriminate>(&s.policy());
  if (pol == nullptr) {
    throw UsageError("eq1 requires an indiscriminate policy, got " + std::string(to_string(s.policy_kind())));
  }
  const double p = pol->p_accept.value();
  auto result = attended_result(s, p, p);

  const bool closed_form = std::holds_alternative<dependency::Independent>(s.dependency()) &&
                           s.degradation_mode() == DegradationMode::kFixedRate;
  if (closed_form) {
    result.p_correct_aided = Probability(
        formula::indiscriminate(s.aid().p_advice_correct.value(), p, s.user().p_post_reject_correct.value()));
    result.p_accept_marginal = pol->p_accept;
  } else {
    result.notes.push_back("indiscriminate policy evaluated as discriminating with equal acceptance rates");
  }
  return result;
}

EvalResult eq2_aided_accuracy(const Scenario& s) {
  const auto* pol = std::get_if<policy::Discriminating>(&s.policy());
  if (pol == nullptr) {
    throw UsageError("eq2 requires a discriminating policy, got " + std::string(to_string(s.policy_kind())));
  }
  return attended_result(s, pol->p_accept_given_correct.value(), pol->p_accept_given_wrong.value());
}

EvalResult eq3_self_gated_accuracy(const Scenario& s) {
  const auto* pol = std::get_if<policy::SelfGated>(&s.policy());
  if (pol == nullptr) {
    throw UsageError("eq3 requires a self_gated policy, got " + std::string(to_string(s.policy_kind())));
  }
  if (!std::holds_alternative<dependency::Independent>(s.dependency())) {
    throw AnalyticFormUnavailable("self_gated accuracy has a closed form only for an independent dependency; "
                                  "use simulation for dependency " +
                                  std::string(dependency_name(s.dependency())));
  }
  const double pa = s.aid().p_advice_correct.value();
  const double pu = s.user().p_unaided_correct.value();
  const double gc = pol->p_ignore_given_user_correct.value();
  const double gw = pol->p_use_given_user_wrong.value();
  const double use_rate = (1.0 - gc) * pu + gw * (1.0 - pu);

  EvalResult r;
  auto& t = r.outcome_table;
  t.set(true, true, true, pa * use_rate);
  t.set(false, true, false, (1.0 - pa) * use_rate);
  t.set(true, false, true, pa * pu * gc);
  t.set(true, false, false, pa * (1.0 - pu) * (1.0 - gw));
  t.set(false, false, true, (1.0 - pa) * pu * gc);
  t.set(false, false, false, (1.0 - pa) * (1.0 - pu) * (1.0 - gw));

  r.p_correct_aided = Probability(formula::self_gated(pa, pu, gc, gw));
  r.p_accept_marginal = Probability(use_rate);
  append_scenario_notes(s, false, r.notes);
  return r;
}

Probability potential_combined(const AidProfile& aid, const UserProfile& user, const DependencyModel& dep) {
  return Probability(aid.p_advice_correct.value() + user.p_unaided_correct.value() - p_both_correct(aid, user, dep));
}

EvalResult evaluate(const Scenario& s) {
  switch (s.policy_kind()) {
    case PolicyKind::kRoutineAccept: return routine_accept_result(s);
    case PolicyKind::kRoutineIgnore: return routine_ignore_result(s);
    case PolicyKind::kIndiscriminate: return eq1_aided_accuracy(s);
    case PolicyKind::kDiscriminating: return eq2_aided_accuracy(s);
    case PolicyKind::kSelfGated: return eq3_self_gated_accuracy(s);
  }
  throw UsageError("unknown policy variant");
}

const PolicyComparison::Entry& PolicyComparison::entry(PolicyKind kind) const {
  for (const auto& e : entries) {
    if (e.policy == kind) return e;
  }
  throw UsageError("policy " + std::string(to_string(kind)) + " not part of this comparison");
}

PolicyComparison compare_policies(const Scenario& s) {
  PolicyComparison cmp;
  cmp.entries.push_back({PolicyKind::kRoutineIgnore, evaluate(s.with_policy(policy::RoutineIgnore{})), 0.0});
  cmp.entries.push_back({PolicyKind::kRoutineAccept, evaluate(s.with_policy(policy::RoutineAccept{})), 0.0});
  const auto configured = s.policy_kind();
  if (configured != PolicyKind::kRoutineAccept && configured != PolicyKind::kRoutineIgnore) {
    cmp.entries.push_back({configured, evaluate(s), 0.0});
  }

  double best = 0.0;
  for (const auto& e : cmp.entries) best = std::max(best, e.result.p_correct_aided.value());
  for (auto& e : cmp.entries) {
    e.margin = best - e.result.p_correct_aided.value();
    if (e.margin <= kTieTolerance) cmp.tied.push_back(e.policy);
  }
  cmp.best_policy = cmp.tied.front();

  if (cmp.tied.size() > 1) {
    std::string names;
    for (auto k : cmp.tied) names += (names.empty() ? "" : ", ") + std::string(to_string(k));
    cmp.notes.push_back("tie between " + names +
                        "; resolved by precedence routine_ignore > routine_accept > configured policy");
  }
  return cmp;
}

Breakeven breakeven_discrimination(const AidProfile& aid, const UserProfile& user, const DependencyModel& dep,
                                   DegradationMode mode) {
  const policy::Discriminating probe{Probability(0.5), Probability(0.5)};
  if (auto report = check_cross_fields(aid, user, probe, dep); !report.ok()) throw ValidationError(std::move(report));

  const double pa = aid.p_advice_correct.value();
  const auto rates = post_reject_rates(aid, user, dep, mode);
  const auto eq2_at = [&](double d) {
    return formula::discriminating(pa, d, 1.0 - d, rates.given_advice_correct.value(),
                                   rates.given_advice_wrong.value());
  };

  Breakeven b;
  b.target = std::max(pa, user.p_unaided_correct.value());
  b.eq2_at_half = eq2_at(0.5);
  b.eq2_at_one = eq2_at(1.0);

  if (b.eq2_at_half >= b.target - kTieTolerance) {
    b.d_star = 0.5;
  } else if (b.eq2_at_one >= b.target - kTieTolerance) {
    // Affine in d: eq2(d) = eq2(0.5) + (d - 0.5) * slope.
    const double slope = (b.eq2_at_one - b.eq2_at_half) / 0.5;
    b.d_star = std::clamp(0.5 + (b.target - b.eq2_at_half) / slope, 0.5, 1.0);
  }
  if (b.d_star) b.eq2_at_d_star = eq2_at(*b.d_star);
  return b;
}

Breakeven breakeven_discrimination(const Scenario& s) {
  return breakeven_discrimination(s.aid(), s.user(), s.dependency(), s.degradation_mode());
}

}  // namespace aidrely
