#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aidrely::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,          // unreadable input, malformed JSON, unwritable output
  kExitInvalid = 2,     // scenario failed validation
  kExitFlagMisuse = 3,  // bad or missing flags
};

/// Runs the tool with argv[1..] in `args`. All output goes to `out`, all
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aidrely::cli
