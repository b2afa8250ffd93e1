#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mastkit {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitDisagree = 1,  // `verify` only: the set is not an agreement set
  kExitParse = 2,     // unreadable or malformed input, bad arguments, unwritable output
  kExitTaxa = 3,      // trees on different taxa, or unknown taxa
  kExitCap = 4,       // input above a solver cap
  kExitVerify = 5,    // a construction or witness failed re-verification
};

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mastkit
