#pragma once

namespace ergopt {

/// Exit codes of the ergopt command.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitSolver = 2,
  kExitValidation = 3,
  kExitNonMonotone = 4,
  kExitSelftest = 5,
};

/// Entry point of the ergopt command: map-optimize, flow-optimize, reduce,
/// lorenz and selftest.
int run_cli(int argc, char** argv);

}  // namespace ergopt
