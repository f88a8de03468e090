#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace halfgasket::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 2,      // validation, domain and resource errors, bad flags, bad JSON
  kNoConvergence = 3,  // convergence and truncation errors
  kInternal = 4,
};

// args excludes the program name. Output goes to `out` only on success.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halfgasket::cli
