#pragma once

namespace aidrely {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace aidrely
