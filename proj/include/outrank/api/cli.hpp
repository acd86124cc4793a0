#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace outrank::api {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `workbench` command line. `args` excludes the program name.
/// Data goes to `out`, diagnostics to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace outrank::api
