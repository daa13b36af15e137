#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padicdyn {

/// Runs the command line `args` (without the program name). The report goes
/// to `out`, diagnostics to `err`. Returns 0, 1 for domain errors, 2 for usage
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padicdyn
