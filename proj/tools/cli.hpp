#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nnsig::cli {

// Exit codes, one per failure class.
enum ExitCode : int {
  kOk = 0,
  kBadParameters = 1,
  kIoFailure = 2,
  kProtocolViolation = 3,
  kConnectionFailure = 4,
  kInvalidSignature = 5,
  kMalformedEncoding = 6,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code. Human output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nnsig::cli
