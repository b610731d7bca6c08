#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace neighborly {

/// Exit codes: 0 success, 1 usage error, 2 computation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;

/// Runs one command line (without the program name). Results go to `out`
/// (or --out), the resolved configuration and diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace neighborly
