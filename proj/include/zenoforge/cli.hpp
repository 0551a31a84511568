#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zenoforge {

/// Runs the command line; args excludes the program name. Returns 0 on success,
/// 1 on runtime failure, 2 on malformed arguments.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zenoforge
