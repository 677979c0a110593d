#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lcatch {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitType = 2,
  kExitUncaught = 3,
  kExitFuel = 4,
  kExitMeta = 5,
  kExitStuck = 6,
  kExitUsage = 64,
};

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcatch
