#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cgsim {

/// Entry point of the `cgsim` tool. `args` excludes the program name.
/// Returns the process exit status: 0 on success, nonzero iff an error was
/// reported on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cgsim
