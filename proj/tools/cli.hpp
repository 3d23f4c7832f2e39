#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pacd::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,     // a verification found a disagreement
  kUsage = 2,        // unknown subcommand or flag, malformed value
  kRange = 3,        // parameter outside its valid range
  kIo = 4,           // missing or unreadable path, failed write
  kComputation = 5,  // enumeration cap, non-monotone curve, ...
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pacd::cli
