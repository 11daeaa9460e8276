#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ecsv::cli {

enum ExitCode : int {
  kAligned = 0,
  kDiscrepancies = 1,
  kFailure = 2,
};

// Runs the command line `args` (args[0] is the program name). Reports go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecsv::cli
