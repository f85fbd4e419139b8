#pragma once

// Test-only oracles. None of them call the closed forms in analytic.cpp.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>

#include "aidrely/model.hpp"

namespace aidrely::testing {

struct EnumeratedOutcome {
  double p_correct = 0.0;
  double p_accept = 0.0;
  /// Indexed like OutcomeTable::index.
  std::array<double, 8> cells{};
};

/// Exact enumeration of the generative event tree: joint (advice, user)
/// cell, then the policy's accept/use branch, then the rejection branch.
EnumeratedOutcome enumerate_event_tree(const Scenario& scenario);

/// Smallest d on the grid {0.5, 0.5 + step, ..., 1} whose enumerated
/// accuracy under Discriminating{d, 1 - d} reaches max(pA, pU).
std::optional<double> grid_search_breakeven(const Scenario& scenario, double step = 1e-3);

double central_difference(const std::function<double(double)>& f, double x, double h = 1e-6);

/// Root of a function with a sign change on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13);

}  // namespace aidrely::testing
