// Command-line entry point: canon, invariants, statevars, verify, debug.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tempinv {

// Returns the process exit code: 0 success, 1 diagnostics/usage errors,
// 2 a verify run found a violation.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace tempinv
