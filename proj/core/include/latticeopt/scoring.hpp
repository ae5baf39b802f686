#pragma once

#include <span>
#include <tuple>

#include "latticeopt/errors.hpp"

namespace latticeopt {

/// Objective-function weights and targets. Defaults reproduce the published
/// solution-score pairs exactly; see derive_weights for their provenance.
struct ScoreConfig {
  double kinf_target = 1.05;
  double ppf_target = 1.33;
  double w1 = 2000.0;  // score units per unit kinf deviation
  double w2 = 1000.0;  // score units per unit PPF excess
  double base = 100.0;

  void validate() const;
};

/// (kinf, ppf, score) for one evaluated solution.
struct EvaluationResult {
  double kinf = 0.0;
  double ppf = 0.0;
  double score = 0.0;

  bool operator==(const EvaluationResult&) const = default;
};

/// base - w1*|kinf - kinf_target| - w2*max(0, ppf - ppf_target).
/// Throws EvaluationError on non-finite input.
double score(double kinf, double ppf, const ScoreConfig& cfg = {});

/// A (kinf, ppf, score) calibration pair.
using ScorePair = std::tuple<double, double, double>;

struct WeightFit {
  double w1 = 0.0;
  double w2 = 0.0;
  double max_residual = 0.0;
};

/// Least-squares recovery of (w1, w2) from published pairs, holding base and
/// the targets fixed. Throws DegenerateSystem when the penalty-term matrix is
/// rank-deficient.
WeightFit derive_weights(std::span<const ScorePair> pairs, double kinf_target = 1.05,
                         double ppf_target = 1.33, double base = 100.0);

}  // namespace latticeopt
