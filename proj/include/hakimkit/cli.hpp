#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hakimkit {

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_analysis = 3, exit_falsified = 4 };

/// The hakimkit command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hakimkit
