#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coldgen::cli {

enum ExitCode : int {
  ok = 0,
  config_error = 1,
  not_converged = 2,
  rd_unstable = 3,
};

/// Runs the command line `args` (args[0] is the program name). Diagnostics go
/// to `err`, per-phase summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coldgen::cli
