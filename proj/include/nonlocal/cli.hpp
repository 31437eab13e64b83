#pragma once

#include <string>
#include <vector>

namespace nonlocal {

// 0: every verdict holds, 1: some inequality fails, 2: usage error,
// 3: no failure but some quadrature was inconclusive.
enum ExitCode : int { exit_holds = 0, exit_fails = 1, exit_usage = 2, exit_inconclusive = 3 };

// Subcommands verify, simulate, counterexample, report; `args` excludes the program name.
int run_command(const std::vector<std::string>& args);
int run_command(int argc, char** argv);

}  // namespace nonlocal
