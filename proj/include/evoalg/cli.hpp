#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evoalg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Runs one CLI invocation; args excludes the program name. Data goes to out
/// (with --stdout) or to files under --out; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evoalg
