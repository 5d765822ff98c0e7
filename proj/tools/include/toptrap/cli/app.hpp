#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toptrap::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,      ///< bad flags or physics preconditions
  kExitIntegrity = 3,  ///< oracle disagreement or integration failure
  kExitIo = 4,
};

/// Runs the toptrap command line (args excludes the program name).
/// Results go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread cap from TOPTRAP_THREADS, 0 (automatic) when unset or invalid.
unsigned threads_from_env();

}  // namespace toptrap::cli
