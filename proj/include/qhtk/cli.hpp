#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qhtk::cli {

// Dispatches one invocation; args excludes the program name. Reports go to
// `out` as canonical JSON (sorted keys, exact rational strings, no
// timestamps); diagnostics go to `err`. Exit codes: 0 = checks pass or are
// inconclusive, 2 = input validation failure, 3 = internal invariant
// violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhtk::cli
