#include "aidrely/probability.hpp"

#include <cmath>

namespace aidrely {

namespace {

std::optional<double> normalize(double value) noexcept {
  if (std::isnan(value)) return std::nullopt;
  if (value < 0.0) {
    if (value >= -kProbabilityClampTolerance) return 0.0;
    return std::nullopt;
  }
  if (value > 1.0) {
    if (value <= 1.0 + kProbabilityClampTolerance) return 1.0;
    return std::nullopt;
  }
  return value;
}

}  // namespace

InvalidProbability::InvalidProbability(double value)
    : std::domain_error("probability " + std::to_string(value) + " outside [0, 1]"), value_(value) {}

Probability::Probability(double value) {
  const auto normalized = normalize(value);
  if (!normalized) throw InvalidProbability(value);
  value_ = *normalized;
}

std::optional<Probability> Probability::try_make(double value) noexcept {
  const auto normalized = normalize(value);
  if (!normalized) return std::nullopt;
  return Probability::unchecked(*normalized);
}

}  // namespace aidrely
