#pragma once

// Domain model for a decision maker consulting a fallible decision aid.
//
// Every probability the accuracy equations consume lives here: the aid's hit
// rate, the user's unaided and post-rejection hit rates, the reliance policy
// and the joint structure between aid correctness and user correctness.
// A Scenario can only be obtained through validation, so holders of one may
// assume every invariant below.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aidrely/probability.hpp"

namespace aidrely {

/// Tolerance applied to the Frechet-Hoeffding bounds and the dominance
/// requirement during cross-field validation.
inline constexpr double kFrechetTolerance = 1e-9;

struct AidProfile {
  Probability p_advice_correct;
};

struct UserProfile {
  Probability p_unaided_correct;
  /// Hit rate after attending to and rejecting the advice. Deliberation eats
  /// into solving time, so this is normally below p_unaided_correct.
  Probability p_post_reject_correct;
};

namespace policy {

/// Take the advice without deliberating.
struct RoutineAccept {
  friend bool operator==(const RoutineAccept&, const RoutineAccept&) = default;
};

/// Never look at the advice; no deliberation time is spent.
struct RoutineIgnore {
  friend bool operator==(const RoutineIgnore&, const RoutineIgnore&) = default;
};

/// Attend, then accept with a probability that does not depend on whether
/// the advice is correct.
struct Indiscriminate {
  Probability p_accept;
  friend bool operator==(const Indiscriminate&, const Indiscriminate&) = default;
};

/// Attend, then accept with a probability conditioned on the (unobserved)
/// correctness of the advice.
struct Discriminating {
  Probability p_accept_given_correct;
  Probability p_accept_given_wrong;
  friend bool operator==(const Discriminating&, const Discriminating&) = default;
};

/// Predict own success first: solve unaided when confident, otherwise take
/// the advice outright. Gating is free of time cost.
struct SelfGated {
  Probability p_ignore_given_user_correct;
  Probability p_use_given_user_wrong;
  friend bool operator==(const SelfGated&, const SelfGated&) = default;
};

}  // namespace policy

using ReliancePolicy = std::variant<policy::RoutineAccept, policy::RoutineIgnore, policy::Indiscriminate,
                                    policy::Discriminating, policy::SelfGated>;

enum class PolicyKind { kRoutineAccept, kRoutineIgnore, kIndiscriminate, kDiscriminating, kSelfGated };

PolicyKind kind_of(const ReliancePolicy& policy) noexcept;
std::string_view to_string(PolicyKind kind) noexcept;
std::optional<PolicyKind> policy_kind_from_string(std::string_view name) noexcept;

namespace dependency {

struct Independent {
  friend bool operator==(const Independent&, const Independent&) = default;
};

/// P(aid correct AND user would be correct), given directly.
struct Joint {
  Probability p_both_correct;
  friend bool operator==(const Joint&, const Joint&) = default;
};

/// The aid is right whenever the user would be right. Requires pA >= pU.
struct Dominant {
  friend bool operator==(const Dominant&, const Dominant&) = default;
};

}  // namespace dependency

using DependencyModel = std::variant<dependency::Independent, dependency::Joint, dependency::Dominant>;

std::string_view dependency_name(const DependencyModel& dep) noexcept;

enum class DegradationMode {
  /// Post-rejection accuracy is p_post_reject_correct regardless of advice
  /// correctness.
  kFixedRate,
  /// Post-rejection accuracy is P(user would be correct | advice correct or
  /// wrong), taken unscaled from the dependency model.
  kConditionalFromJoint,
};

std::string_view to_string(DegradationMode mode) noexcept;
std::optional<DegradationMode> degradation_mode_from_string(std::string_view name) noexcept;

/// fixed-rate for Independent, conditional-from-joint otherwise.
DegradationMode default_degradation_mode(const DependencyModel& dep) noexcept;

struct Violation {
  std::string constraint;  // e.g. "frechet_upper_bound"
  std::string path;        // dot-path into the scenario document
  std::string value;       // offending value as text
  std::string allowed;     // human-readable allowed range
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return violations.empty(); }
  std::string to_string() const;
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(ValidationReport report);

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Misuse of an operation, such as passing a scenario with the wrong policy
/// variant.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A validated, immutable composite of aid, user, policy and dependency.
class Scenario {
 public:
  const AidProfile& aid() const noexcept { return aid_; }
  const UserProfile& user() const noexcept { return user_; }
  const ReliancePolicy& policy() const noexcept { return policy_; }
  const DependencyModel& dependency() const noexcept { return dependency_; }
  DegradationMode degradation_mode() const noexcept { return mode_; }
  /// True when degradation_mode was not given and the default was applied.
  bool degradation_mode_defaulted() const noexcept { return mode_defaulted_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  PolicyKind policy_kind() const noexcept { return kind_of(policy_); }
  /// P(aid correct AND user would be correct) implied by the dependency.
  double p_both_correct() const noexcept;

  /// Same scenario with another policy; cross-field constraints do not
  /// involve the policy, so this cannot fail.
  Scenario with_policy(ReliancePolicy policy) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  friend Scenario make_scenario(AidProfile, UserProfile, ReliancePolicy, DependencyModel,
                                std::optional<DegradationMode>);
  Scenario() = default;

  AidProfile aid_;
  UserProfile user_;
  ReliancePolicy policy_;
  DependencyModel dependency_;
  DegradationMode mode_ = DegradationMode::kFixedRate;
  bool mode_defaulted_ = true;
  std::vector<std::string> warnings_;
};

/// Cross-field checks on typed inputs. Every violated constraint is
/// collected; nothing is reported for a valid combination except warnings.
ValidationReport check_cross_fields(const AidProfile& aid, const UserProfile& user, const ReliancePolicy& policy,
                                    const DependencyModel& dep);

/// Builds a Scenario from typed parts, throwing ValidationError when any
/// cross-field constraint fails.
Scenario make_scenario(AidProfile aid, UserProfile user, ReliancePolicy policy,
                       DependencyModel dep = dependency::Independent{},
                       std::optional<DegradationMode> mode = std::nullopt);

/// P(aid correct AND user would be correct) for the given marginals.
double p_both_correct(const AidProfile& aid, const UserProfile& user, const DependencyModel& dep) noexcept;

struct ConditionalUserRates {
  Probability given_advice_correct;
  Probability given_advice_wrong;
};

/// P(user would be correct | advice correct) and P(... | advice wrong).
/// A conditioning event of probability zero yields rate 0.
ConditionalUserRates conditional_user_rates(const AidProfile& aid, const UserProfile& user,
                                            const DependencyModel& dep);
ConditionalUserRates conditional_user_rates(const Scenario& scenario);

}  // namespace aidrely
