#pragma once

#include <iosfwd>

namespace sebv::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kValidationError = 2,
  kRetryExhausted = 3,
};

/// Full command-line entry point. Records go to `out` unless --output names
/// a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sebv::cli
