#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace minstab {

/// Full command-line front end (subcommands pipeline, sweep, compare-pe).
/// `args` excludes the program name. Returns the process exit code:
/// 0 success, 1 algorithmic failure, 2 usage or config error.
int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace minstab
