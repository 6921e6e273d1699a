#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symmix::cli {

//! Exit statuses shared by every subcommand.
enum ExitCode : int
{
  exit_ok = 0,
  exit_input = 2,
  exit_degenerate = 3,
  exit_density = 4
};

//! Runs the command line `args` (args[0] is the program name) and returns
//! the process exit status. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace symmix::cli
