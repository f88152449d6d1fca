#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jddgen::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kIo = 2,
  kDiagnosticFailure = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Progress goes to `out`, errors and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jddgen::cli
