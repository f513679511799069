#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qdarwin {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full self-validation suite. Every tolerance is pinned in the
/// implementation; the fixed default seed keeps the stochastic checks
/// reproducible.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 424242,
                                            unsigned workers = 0);

/// One line per criterion plus a summary row.
std::string format_acceptance(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qdarwin
