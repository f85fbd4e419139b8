#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace aidrely {

/// Values within this distance outside [0, 1] are clamped onto the interval
/// instead of rejected.
inline constexpr double kProbabilityClampTolerance = 1e-12;

class InvalidProbability : public std::domain_error {
 public:
  explicit InvalidProbability(double value);

  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// A real number in [0, 1].
class Probability {
 public:
  constexpr Probability() noexcept = default;

  /// Throws InvalidProbability for NaN or values outside [0, 1] beyond the
  /// clamp tolerance.
  explicit Probability(double value);

  static std::optional<Probability> try_make(double value) noexcept;

  constexpr double value() const noexcept { return value_; }
  constexpr explicit operator double() const noexcept { return value_; }

  Probability complement() const noexcept { return Probability::unchecked(1.0 - value_); }

  friend constexpr auto operator<=>(const Probability&, const Probability&) = default;

 private:
  static Probability unchecked(double value) noexcept {
    Probability p;
    p.value_ = value;
    return p;
  }

  double value_ = 0.0;
};

}  // namespace aidrely
