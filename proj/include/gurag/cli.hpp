#pragma once

// Command-line front end as a library so it can be tested without spawning
// processes.

#include <optional>
#include <string>
#include <vector>

namespace gurag {

enum ExitCode {
  kExitOk = 0,           // reachable / valid
  kExitNegative = 1,     // unreachable / invalid plan / fuzz disagreement
  kExitBound = 2,        // search bound exceeded, answer unknown
  kExitInput = 3,        // unreadable file, parse error, bad arguments
  kExitRestriction = 4,  // requested engine does not apply
  kExitInternal = 5,     // an engine broke its own contract
};

struct CommandOutcome {
  int exitCode = kExitOk;
  std::string out;  // report
  std::string err;  // diagnostics
};

/// argv[0] is the program name. When input is set, a file argument of '-'
/// reads it instead of standard input.
CommandOutcome run(const std::vector<std::string>& argv,
                   std::optional<std::string> input = std::nullopt);

}  // namespace gurag
