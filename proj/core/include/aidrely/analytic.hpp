#pragma once

// Closed-form aided accuracy for every reliance policy.
//
//   indiscriminate  P = pA*p + r*(1 - p)
//   discriminating  P = ac*pA + u_c*(1 - ac)*pA + u_w*(1 - aw)*(1 - pA)
//   self-gated      P = g_c*pU + pA*(1 - g_c)*pU + pA*g_w*(1 - pU)
//
// where (u_c, u_w) are the post-rejection hit rates given correct and wrong
// advice, resolved by the scenario's DegradationMode.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aidrely/model.hpp"

namespace aidrely {

/// Ties in p_correct_aided within this distance are broken by precedence.
inline constexpr double kTieTolerance = 1e-12;

/// Joint distribution over (advice correct, accepted or used, final correct).
class OutcomeTable {
 public:
  static constexpr std::size_t kCells = 8;

  static constexpr std::size_t index(bool advice_correct, bool accepted, bool final_correct) noexcept {
    return (advice_correct ? 0u : 4u) + (accepted ? 0u : 2u) + (final_correct ? 0u : 1u);
  }

  double at(bool advice_correct, bool accepted, bool final_correct) const noexcept {
    return cells_[index(advice_correct, accepted, final_correct)];
  }
  void set(bool advice_correct, bool accepted, bool final_correct, double mass) noexcept {
    cells_[index(advice_correct, accepted, final_correct)] = mass;
  }

  const std::array<double, kCells>& cells() const noexcept { return cells_; }

  double total() const noexcept;
  double final_correct_mass() const noexcept;
  double accepted_mass() const noexcept;

 private:
  std::array<double, kCells> cells_{};
};

struct EvalResult {
  Probability p_correct_aided;
  OutcomeTable outcome_table;
  Probability p_accept_marginal;
  std::vector<std::string> notes;
};

/// Thrown when no closed form exists for the scenario (self-gated reliance
/// under a non-independent dependency). Estimate it by simulation instead.
class AnalyticFormUnavailable : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Post-rejection hit rates (u_c, u_w) under the given mode.
ConditionalUserRates post_reject_rates(const AidProfile& aid, const UserProfile& user, const DependencyModel& dep,
                                       DegradationMode mode);

/// Requires an Indiscriminate policy. Non-independent dependencies, or an
/// explicit conditional-from-joint mode, are evaluated with discriminating
/// semantics at ac = aw = p.
EvalResult eq1_aided_accuracy(const Scenario& scenario);

/// Requires a Discriminating policy.
EvalResult eq2_aided_accuracy(const Scenario& scenario);

/// Requires a SelfGated policy and an Independent dependency; throws
/// AnalyticFormUnavailable for other dependencies.
EvalResult eq3_self_gated_accuracy(const Scenario& scenario);

/// P(at least one of aid and unaided user is correct).
Probability potential_combined(const AidProfile& aid, const UserProfile& user, const DependencyModel& dep);

/// Dispatches on the policy variant.
EvalResult evaluate(const Scenario& scenario);

struct PolicyComparison {
  struct Entry {
    PolicyKind policy;
    EvalResult result;
    double margin;  // best minus this entry's accuracy, >= 0
  };

  /// RoutineIgnore, RoutineAccept, then the configured policy when it is not
  /// one of those two. This is also the tie-break precedence.
  std::vector<Entry> entries;
  PolicyKind best_policy;
  /// Policies within kTieTolerance of the best, in precedence order. Has a
  /// single element when there is no tie.
  std::vector<PolicyKind> tied;
  std::vector<std::string> notes;

  const Entry& entry(PolicyKind kind) const;
};

PolicyComparison compare_policies(const Scenario& scenario);

struct Breakeven {
  /// Smallest d in [0.5, 1] with eq2(ac = d, aw = 1 - d) >= target; empty
  /// when unattainable.
  std::optional<double> d_star;
  double target;  // max(pA, pU)
  std::optional<double> eq2_at_d_star;
  double eq2_at_half;
  double eq2_at_one;
};

/// Break-even symmetric discrimination against the better routine policy.
/// Discriminating accuracy is affine in d along (d, 1 - d), so this is solved exactly.
Breakeven breakeven_discrimination(const AidProfile& aid, const UserProfile& user, const DependencyModel& dep,
                                   DegradationMode mode);
Breakeven breakeven_discrimination(const Scenario& scenario);

namespace formula {

// Unchecked closed forms on plain doubles. They are polynomials in their
// arguments and stay well defined slightly outside [0, 1], which is what
// finite-difference checks need.

double indiscriminate(double p_advice, double p_accept, double post_reject) noexcept;
double discriminating(double p_advice, double accept_given_correct, double accept_given_wrong,
                      double post_reject_given_correct, double post_reject_given_wrong) noexcept;
double self_gated(double p_advice, double p_user, double ignore_given_user_correct,
                  double use_given_user_wrong) noexcept;

/// Conditional user rates from marginals and P(both correct); zero-mass
/// conditioning events give 0.
std::pair<double, double> conditional_rates(double p_advice, double p_user, double p_both) noexcept;

}  // namespace formula

}  // namespace aidrely
