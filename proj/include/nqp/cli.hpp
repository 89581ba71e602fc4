#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nqp::cli {

enum ExitCode : int {
    ok = 0,
    invalid_input = 1,
    budget_exceeded = 2,
    invariant_violation = 3,
};

/// Runs the `nqp` command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nqp::cli
