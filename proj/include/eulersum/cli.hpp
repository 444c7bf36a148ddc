#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eulersum {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFail = 1,
  kExitParse = 2,
  kExitDivergent = 3,
  kExitPrecondition = 4,
  kExitTables = 5,
  kExitCapacity = 6,
};

/// Runs one command; args exclude the program name. Results go to out,
/// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eulersum
