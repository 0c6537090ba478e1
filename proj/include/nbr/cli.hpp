#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nbr {

// Exit codes shared by all commands.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,       // illegal step, or a theorem check failed
  kExitInput = 2,        // malformed game, restriction, or flags
  kExitUnsupported = 3,  // e.g. fast => requested
  kExitUnknown = 4,      // a check could only be decided up to resolution
};

// Runs one command. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nbr
