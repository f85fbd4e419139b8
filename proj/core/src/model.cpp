#include "aidrely/model.hpp"

#include <algorithm>
#include <sstream>

namespace aidrely {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string format_range(double lo, double hi) {
  return "[" + format_number(lo) + ", " + format_number(hi) + "]";
}

}  // namespace

PolicyKind kind_of(const ReliancePolicy& policy) noexcept {
  return std::visit(Overloaded{
                        [](const policy::RoutineAccept&) { return PolicyKind::kRoutineAccept; },
                        [](const policy::RoutineIgnore&) { return PolicyKind::kRoutineIgnore; },
                        [](const policy::Indiscriminate&) { return PolicyKind::kIndiscriminate; },
                        [](const policy::Discriminating&) { return PolicyKind::kDiscriminating; },
                        [](const policy::SelfGated&) { return PolicyKind::kSelfGated; },
                    },
                    policy);
}

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::kRoutineAccept: return "routine_accept";
    case PolicyKind::kRoutineIgnore: return "routine_ignore";
    case PolicyKind::kIndiscriminate: return "indiscriminate";
    case PolicyKind::kDiscriminating: return "discriminating";
    case PolicyKind::kSelfGated: return "self_gated";
  }
  return "unknown";
}

std::optional<PolicyKind> policy_kind_from_string(std::string_view name) noexcept {
  for (auto kind : {PolicyKind::kRoutineAccept, PolicyKind::kRoutineIgnore, PolicyKind::kIndiscriminate,
                    PolicyKind::kDiscriminating, PolicyKind::kSelfGated}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view dependency_name(const DependencyModel& dep) noexcept {
  return std::visit(Overloaded{
                        [](const dependency::Independent&) -> std::string_view { return "independent"; },
                        [](const dependency::Joint&) -> std::string_view { return "joint"; },
                        [](const dependency::Dominant&) -> std::string_view { return "dominant"; },
                    },
                    dep);
}

std::string_view to_string(DegradationMode mode) noexcept {
  return mode == DegradationMode::kFixedRate ? "fixed_rate" : "conditional_from_joint";
}

std::optional<DegradationMode> degradation_mode_from_string(std::string_view name) noexcept {
  if (name == "fixed_rate") return DegradationMode::kFixedRate;
  if (name == "conditional_from_joint") return DegradationMode::kConditionalFromJoint;
  return std::nullopt;
}

DegradationMode default_degradation_mode(const DependencyModel& dep) noexcept {
  return std::holds_alternative<dependency::Independent>(dep) ? DegradationMode::kFixedRate
                                                              : DegradationMode::kConditionalFromJoint;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "violation: " << v.constraint << " at " << v.path << ": value " << v.value << ", allowed " << v.allowed
       << '\n';
  }
  for (const auto& w : warnings) os << "warning: " << w << '\n';
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::invalid_argument("invalid scenario:\n" + report.to_string()), report_(std::move(report)) {}

double p_both_correct(const AidProfile& aid, const UserProfile& user, const DependencyModel& dep) noexcept {
  const double pa = aid.p_advice_correct.value();
  const double pu = user.p_unaided_correct.value();
  return std::visit(Overloaded{
                        [&](const dependency::Independent&) { return pa * pu; },
                        [&](const dependency::Joint& j) { return j.p_both_correct.value(); },
                        [&](const dependency::Dominant&) { return std::min(pa, pu); },
                    },
                    dep);
}

double Scenario::p_both_correct() const noexcept { return aidrely::p_both_correct(aid_, user_, dependency_); }

Scenario Scenario::with_policy(ReliancePolicy policy) const {
  return make_scenario(aid_, user_, std::move(policy), dependency_,
                       mode_defaulted_ ? std::nullopt : std::optional<DegradationMode>(mode_));
}

ValidationReport check_cross_fields(const AidProfile& aid, const UserProfile& user, const ReliancePolicy& policy,
                                    const DependencyModel& dep) {
  ValidationReport report;
  const double pa = aid.p_advice_correct.value();
  const double pu = user.p_unaided_correct.value();

  if (const auto* joint = std::get_if<dependency::Joint>(&dep)) {
    const double p11 = joint->p_both_correct.value();
    const double lower = std::max(0.0, pa + pu - 1.0);
    const double upper = std::min(pa, pu);
    if (p11 > upper + kFrechetTolerance) {
      report.violations.push_back(
          {"frechet_upper_bound", "dependency.p_both_correct", format_number(p11), format_range(lower, upper)});
    }
    if (p11 < lower - kFrechetTolerance) {
      report.violations.push_back(
          {"frechet_lower_bound", "dependency.p_both_correct", format_number(p11), format_range(lower, upper)});
    }
  }
  if (std::holds_alternative<dependency::Dominant>(dep) && pa < pu - kFrechetTolerance) {
    report.violations.push_back({"dominance_requires_aid_at_least_user", "aid.p_advice_correct",
                                 format_number(pa), ">= user.p_unaided_correct (" + format_number(pu) + ")"});
  }

  if (user.p_post_reject_correct.value() > pu) {
    report.warnings.push_back("user.p_post_reject_correct (" + format_number(user.p_post_reject_correct.value()) +
                              ") exceeds user.p_unaided_correct (" + format_number(pu) +
                              "); attending to advice normally costs accuracy");
  }
  if (std::holds_alternative<policy::SelfGated>(policy) && !std::holds_alternative<dependency::Independent>(dep)) {
    report.warnings.push_back(
        "self_gated policy with a non-independent dependency has no closed form; only simulation applies");
  }
  return report;
}

Scenario make_scenario(AidProfile aid, UserProfile user, ReliancePolicy policy, DependencyModel dep,
                       std::optional<DegradationMode> mode) {
  auto report = check_cross_fields(aid, user, policy, dep);
  if (!report.ok()) throw ValidationError(std::move(report));

  Scenario s;
  s.aid_ = aid;
  s.user_ = user;
  s.policy_ = std::move(policy);
  s.dependency_ = std::move(dep);
  s.mode_defaulted_ = !mode.has_value();
  s.mode_ = mode.value_or(default_degradation_mode(s.dependency_));
  s.warnings_ = std::move(report.warnings);
  return s;
}

ConditionalUserRates conditional_user_rates(const AidProfile& aid, const UserProfile& user,
                                            const DependencyModel& dep) {
  const double pa = aid.p_advice_correct.value();
  const double pu = user.p_unaided_correct.value();
  const double p11 = p_both_correct(aid, user, dep);

  // Bounds are validated with a tolerance, so a ratio may overshoot [0, 1]
  // by a hair.
  const auto rate = [](double num, double den) {
    return Probability(std::clamp(num / den, 0.0, 1.0));
  };

  if (std::holds_alternative<dependency::Independent>(dep)) {
    return {pa > 0.0 ? user.p_unaided_correct : Probability(0.0),
            pa < 1.0 ? user.p_unaided_correct : Probability(0.0)};
  }
  return {pa > 0.0 ? rate(p11, pa) : Probability(0.0), pa < 1.0 ? rate(pu - p11, 1.0 - pa) : Probability(0.0)};
}

ConditionalUserRates conditional_user_rates(const Scenario& scenario) {
  return conditional_user_rates(scenario.aid(), scenario.user(), scenario.dependency());
}

}  // namespace aidrely
