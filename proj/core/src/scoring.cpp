#include "latticeopt/scoring.hpp"

#include <cmath>

namespace latticeopt {

void ScoreConfig::validate() const {
  if (!(w1 > 0.0) || !(w2 > 0.0)) throw ConfigError("scoring: weights must be positive");
  if (!(ppf_target > 1.0)) throw ConfigError("scoring: ppf_target must exceed 1");
  if (!(kinf_target > 0.0) || !(kinf_target < 2.0))
    throw ConfigError("scoring: kinf_target must lie in (0, 2)");
}

double score(double kinf, double ppf, const ScoreConfig& cfg) {
  if (!std::isfinite(kinf) || !std::isfinite(ppf))
    throw EvaluationError("score: non-finite kinf or ppf");
  return cfg.base - cfg.w1 * std::abs(kinf - cfg.kinf_target) -
         cfg.w2 * std::max(0.0, ppf - cfg.ppf_target);
}

WeightFit derive_weights(std::span<const ScorePair> pairs, double kinf_target,
                         double ppf_target, double base) {
  if (pairs.size() < 2) throw DegenerateSystem("derive_weights: need at least 2 pairs");

  // Normal equations for  [-|k - kt|, -max(0, p - pt)] . [w1 w2]' = s - base.
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (const auto& [kinf, ppf, s] : pairs) {
    const double t1 = -std::abs(kinf - kinf_target);
    const double t2 = -std::max(0.0, ppf - ppf_target);
    const double rhs = s - base;
    a11 += t1 * t1;
    a12 += t1 * t2;
    a22 += t2 * t2;
    b1 += t1 * rhs;
    b2 += t2 * rhs;
  }
  const double det = a11 * a22 - a12 * a12;
  const double scale = std::max(a11 * a22, a12 * a12);
  if (scale <= 0.0 || std::abs(det) <= 1e-12 * scale)
    throw DegenerateSystem("derive_weights: penalty-term matrix is rank-deficient");

  WeightFit fit;
  fit.w1 = (b1 * a22 - b2 * a12) / det;
  fit.w2 = (a11 * b2 - a12 * b1) / det;

  ScoreConfig cfg;
  cfg.kinf_target = kinf_target;
  cfg.ppf_target = ppf_target;
  cfg.w1 = fit.w1;
  cfg.w2 = fit.w2;
  cfg.base = base;
  for (const auto& [kinf, ppf, s] : pairs)
    fit.max_residual = std::max(fit.max_residual, std::abs(score(kinf, ppf, cfg) - s));
  return fit;
}

}  // namespace latticeopt
