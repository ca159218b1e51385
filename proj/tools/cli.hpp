#pragma once

// Command-line front end. Exit codes: 0 ok, 1 invalid arguments, 2 resource
// or budget exhausted, 3 verification failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace splitlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitResource = 2;
inline constexpr int kExitVerification = 3;

/// Runs one invocation; args excludes the program name. The report goes to
/// `out` (or to --out), diagnostics to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitlab::cli
