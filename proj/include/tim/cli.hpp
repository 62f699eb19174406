#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tim {

// Exit statuses of the tim command.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitParseError = 2,
  kExitClassError = 3,
  kExitInfeasible = 4,
};

// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tim
