#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brickbo::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kSaturated = 2,
  kInvalid = 3,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brickbo::cli
