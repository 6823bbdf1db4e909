#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbme::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kUnstable = 3,
  kOracleDeviation = 4,
};

/// Oracle runs fail when the largest first-moment deviation exceeds this.
inline constexpr double kOracleTolerance = 1e-6;

/// Runs the command line `args` (args[0] is the program name). Output that
/// is not redirected with --output goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbme::cli
