#pragma once

#include <iosfwd>

namespace causaltrust::cli {

enum ExitCode : int {
  kOk = 0,
  kDataError = 1,      // malformed lexicon/graph documents
  kUsageError = 2,     // bad flags or out-of-range hyperparameters
  kIoError = 3,        // unreadable input or unwritable output
  kNoScorable = 4,     // the classified source had nothing to score
};

/// Entry point behind the `causaltrust` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace causaltrust::cli
