#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chromathresh {

// Parses argv (without the program name) and dispatches to the owning
// module. Primary results go to `out`, diagnostics to `err`.
// Exit codes: 0 success, 2 usage error, 3 resource cap exceeded,
// 4 internal invariant violation.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace chromathresh
