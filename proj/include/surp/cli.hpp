#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace surp {

/// Entry point of the `surp` command-line tool. `args[0]` is the program
/// name. Returns the process exit status: 0 on success, 1 on a runtime
/// error, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace surp
