#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rasaeco {

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Reports and stats go to `out`, fatal messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rasaeco
