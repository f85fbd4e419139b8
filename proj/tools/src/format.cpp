#include "aidrely/cli/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace aidrely::cli {

namespace {

std::string to_chars_general(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, kOutputDigits);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  auto text = to_chars_general(value);
  if (std::isfinite(value) && text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

double round_output(double value) {
  if (!std::isfinite(value)) return value;
  const auto text = to_chars_general(value);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out == 0.0 ? 0.0 : out;
}

}  // namespace aidrely::cli
