#pragma once

#include <ostream>

namespace branecalc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 2,
  kConsistencyFailure = 3,
};

/// Runs one command line; results go to `out`, the one-line diagnostic of a
/// failed run to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace branecalc::cli
