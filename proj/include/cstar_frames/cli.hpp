#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cstar {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 2,
    exit_consistency_failure = 3,
    exit_precondition_failure = 4,
};

/// Runs `cstar_frames` with `args` (program name excluded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cstar
