#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bac::cli {

enum ExitCode : int
{
    exit_ok = 0,
    exit_empty = 1,
    exit_usage = 2,
    exit_refused = 3,
    exit_disagree = 4
};

/// Runs one bacsolve command; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bac::cli
