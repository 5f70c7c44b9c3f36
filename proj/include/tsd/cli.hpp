#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsd {

// Dispatches one invocation. args excludes the program name.
// Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 usage or I/O error, 3 well-formed but unsupported input.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tsd
