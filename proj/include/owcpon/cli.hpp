#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace owcpon::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,       // bad arguments or unparsable scenario
  kInvalid = 2,     // validation violations
  kEvaluation = 3,  // evaluation failed (no route, missing catalog entry, ...)
};

// Runs one CLI invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace owcpon::cli
