#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace defectqm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kSolverFailure = 3 };

/// Runs the command line (args excludes the program name). Data goes to `out`
/// unless --out is given; diagnostics and --verbose metadata go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace defectqm::cli
