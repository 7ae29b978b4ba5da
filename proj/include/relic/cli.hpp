#pragma once

#include <string>
#include <vector>

namespace relic {

// Exit-status contract: 0 = definite answer, 2 = bounded verdict (the
// answer is exhaustive only up to a printed rank/size bound), 1 = usage or
// input error.  Bounded verdicts get their own status so shell pipelines
// cannot mistake evidence for proof.
struct CliResult {
  int status = 0;
  std::string out;  // report (standard output)
  std::string err;  // diagnostics (standard error)
};

// Runs one command given argv-style arguments (program name excluded).
// Never throws: failures become status 1 with a message in err.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace relic
