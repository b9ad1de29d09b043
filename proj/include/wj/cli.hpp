#pragma once

#include <iosfwd>

namespace wj::cli {

enum ExitCode : int {
  kOk = 0,
  kToleranceFailure = 1,
  kInputError = 2,
  kNumericError = 3,
};

/// Entry point of the `wj` tool. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wj::cli
