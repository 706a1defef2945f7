#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spinent::cli {

// Exit codes: 0 success, 1 runtime or property failure, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Largest --two-s-max accepted by verify (dense rho_M stays at or below 1024^2).
inline constexpr int kVerifyMaxTwoS = 31;

// argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinent::cli
