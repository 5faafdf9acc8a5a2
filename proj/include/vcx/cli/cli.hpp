#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vcx::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInvariant = 2,
    kExitBudget = 3,
};

/// Runs the vcx command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vcx::cli
