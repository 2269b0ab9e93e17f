#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imvs {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitInfeasible = 4,
  kExitSizeGuard = 5,
};

/// Entry point of the `imvs` tool. Writes results to `out` and diagnostics to
/// `err`; returns one of ExitCode.
int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace imvs
