#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simop::cli {

/// Exit codes of the simop tool.
enum ExitCode : int {
  kOk = 0,
  kPrecondition = 2,     // domain, budget or structural failure
  kNumerical = 3,        // non-convergence, resolution, verification, singular intertwiner
  kInputOutput = 4,      // unreadable file, malformed JSON, bad flags
};

/// Runs one subcommand (reduce, potential, kernels, verify). argv[0] is the program name.
/// Reports go to --out or to `out`; diagnostics go to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace simop::cli
