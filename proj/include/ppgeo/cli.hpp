#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ppgeo {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Runs one invocation. `args` excludes the program name. Reports go to
/// files under --out; `out` gets the summary, `err` diagnostics.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ppgeo
