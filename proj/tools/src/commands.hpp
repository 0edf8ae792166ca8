#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace bec::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNumericFailure = 3 };

int cmd_mutual_info(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_entropy(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_mu_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_tc(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_discontinuity(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const std::vector<std::string>& only, unsigned threads, std::ostream& out,
               std::ostream& err);

/// Entry point shared by main() and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bec::cli
