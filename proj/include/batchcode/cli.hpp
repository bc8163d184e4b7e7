#pragma once

#include <ostream>

namespace batchcode {

// Exit codes: property holds or construction succeeded, property fails,
// input error.
enum ExitCode : int { kHolds = 0, kFails = 1, kInputError = 2 };

// Runs one subcommand. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace batchcode
