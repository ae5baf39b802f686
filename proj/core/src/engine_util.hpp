#pragma once

#include "latticeopt/optimize.hpp"

namespace latticeopt::detail {

/// steps_to_best = 0 when initialization already attained the final best,
/// otherwise the 1-based index of the first iteration that did. Scores are
/// compared exactly.
inline void finalize_steps_to_best(TrialReport& report) {
  report.steps_to_best = 0;
  if (report.best_result.score == report.initial_best) return;
  for (int t = 0; t < static_cast<int>(report.progression.size()); ++t) {
    if (report.progression[t] == report.best_result.score) {
      report.steps_to_best = t + 1;
      return;
    }
  }
}

}  // namespace latticeopt::detail
