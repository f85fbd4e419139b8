#pragma once

// One-dimensional parameter sweeps and exact sensitivities of the aided
// accuracy.
//
// Parameters are addressed by dot-paths into the scenario document, e.g.
// "policy.p_accept" or "dependency.p_both_correct".

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aidrely/model.hpp"

namespace aidrely {

struct SweepSpec {
  Scenario base;
  std::string parameter_path;
  double from = 0.0;
  double to = 1.0;
  std::size_t steps = 2;
};

struct SweepSeries {
  std::string parameter_path;
  std::vector<double> parameter_values;
  std::vector<Probability> accuracies;
  /// Per grid point; they only vary when the swept parameter is pU or pA.
  std::vector<Probability> unaided_reference;
  std::vector<Probability> routine_accept_reference;
};

class SweepError : public std::invalid_argument {
 public:
  enum class Kind { kBadGrid, kUnknownPath, kPathNotApplicable, kInvalidValue };

  SweepError(Kind kind, const std::string& what, std::optional<double> value = std::nullopt)
      : std::invalid_argument(what), kind_(kind), value_(value) {}

  Kind kind() const noexcept { return kind_; }
  /// The first grid value that produced an invalid scenario (kInvalidValue).
  std::optional<double> value() const noexcept { return value_; }

 private:
  Kind kind_;
  std::optional<double> value_;
};

/// Every path that names a probability in some scenario shape.
const std::vector<std::string>& sweepable_paths();

/// Inclusive, equally spaced; the last point is exactly `to`.
std::vector<double> sweep_grid(double from, double to, std::size_t steps);

/// The base scenario with one parameter replaced. Throws SweepError
/// (kUnknownPath / kPathNotApplicable) or ValidationError.
Scenario with_parameter(const Scenario& base, const std::string& path, double value);

/// Validates every grid point before evaluating any of them.
SweepSeries run_sweep(const SweepSpec& spec);

inline constexpr double kFiniteDifferenceStep = 1e-6;
inline constexpr double kFiniteDifferenceTolerance = 1e-6;

struct PartialDerivative {
  double analytic = 0.0;
  double finite_difference = 0.0;
};

/// Partials of p_correct_aided with respect to every probability the active
/// equation reads, keyed by dot-path. Each hand-derived partial is checked
/// against a central finite difference; a mismatch throws std::logic_error.
std::map<std::string, PartialDerivative> sensitivity(const Scenario& scenario);

}  // namespace aidrely
