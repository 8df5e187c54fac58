#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace liegeo {

/// Runs one CLI invocation (arguments without the program name) and writes to
/// the given streams. Returns the process exit code: 0 success, 1 validation
/// or verification failure (including unreadable documents), 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace liegeo
