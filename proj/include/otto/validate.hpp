#pragma once

// Internal oracle suite behind `--mode validate`.

#include <iosfwd>
#include <string>
#include <vector>

#include "otto/working_medium.hpp"

namespace otto {

enum class CheckStatus { pass, fail, not_applicable };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct ValidateOptions {
  /// Runs the Gibbs check with an inverted equilibrium energy; the check
  /// is expected to fail. Debug aid for the harness itself.
  bool flip_eeq_sign = false;
  unsigned seed = 20240611;
};

std::vector<CheckResult> run_validation(const CycleParams& params, const ValidateOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

/// One "PASS|FAIL|N/A  name  detail" line per check.
void print_results(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace otto
