#ifndef MODKIT_CLI_HPP
#define MODKIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace modkit {

enum ExitCode { kExitPassed = 0, kExitCheckFailure = 1, kExitUsage = 2 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modkit

#endif
