#pragma once

#include <ostream>

namespace cayley {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitVerdict = 1, kExitUsage = 2 };

/// Entry point behind the `cayley` executable. Subcommands: spectrum, basis,
/// lowerbound, expansion, draw, selftest. Reports go to --out when given,
/// otherwise to `out`; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cayley
