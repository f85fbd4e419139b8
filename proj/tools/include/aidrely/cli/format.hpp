#pragma once

#include <string>

namespace aidrely::cli {

inline constexpr int kOutputDigits = 12;

/// Shortest decimal text with at most 12 significant digits, independent of
/// the C locale. Integral values keep a trailing ".0".
std::string format_number(double value);

/// value rounded to 12 significant digits.
double round_output(double value);

}  // namespace aidrely::cli
