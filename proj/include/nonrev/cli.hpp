#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nonrev {

// Dispatches one CLI invocation (argv without the program name) and writes
// a JSON report to out. Returns 0 on success, 1 on numerical failure (with
// a machine-readable error object on out), 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nonrev
