#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vofrac::cli {

// Runs the command line given by args (without the program name), writing
// data to `out` and diagnostics to `diag`. Returns the process exit status:
// 0 success, 1 validation/usage failure, 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag);

}  // namespace vofrac::cli
