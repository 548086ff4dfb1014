// Eleven end-to-end validation checks covering the fixed points, backend
// equivalences, closed-form limits, qualitative transition signatures, and
// orchestration determinism of the toolkit.  Shared by the `validate` CLI
// subcommand and the acceptance test binary.
#pragma once

#include <string>
#include <vector>

namespace acceptance {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // first failure, or a summary statistic when passing
};

// Runs every check in order.  `scratch_dir` hosts the sweep outputs and
// caches of the determinism check; it is created if missing and left behind
// for inspection.
std::vector<CheckResult> run_all(const std::string& scratch_dir);

// Prints one line per check ("[PASS] 03 ..." / "[FAIL] 03 ...: detail") and
// returns the number of failures.
int print_results(const std::vector<CheckResult>& results);

}  // namespace acceptance
