#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bephap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kRejected = 3,
  kBenchInfeasible = 4,
};

/// Entry point behind the `bephap` binary; args exclude argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bephap::cli
