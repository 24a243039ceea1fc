#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stablab::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kNumericalError = 2,
};

/// Runs one subcommand. `args` excludes the program name. Reports go to the
/// --output file when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stablab::cli
