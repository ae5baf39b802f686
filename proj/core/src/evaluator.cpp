#include "latticeopt/evaluator.hpp"

#include <algorithm>
#include <cmath>

namespace latticeopt {

void SurrogateConfig::validate() const {
  if (!(k_asym > 0.0) || !(k_sat > 0.0) || !(gd_alpha > 0.0) || !(s_edge > 0.0) ||
      !(s_water > 0.0))
    throw ConfigError("surrogate: all constants must be positive");
  if (!(k_asym > 1.0)) throw ConfigError("surrogate: k_asym must exceed 1");
}

PhysicsResult surrogate_evaluate(const SolutionVector& sol, const LatticeMap& map,
                                 const SurrogateConfig& cfg) {
  const double fueled = static_cast<double>(map.fueled_pin_count());
  double worth_sum = 0.0;
  double power_sum = 0.0;
  double power_max = 0.0;
  for (const auto& cell : map.cells()) {
    if (cell.is_water()) continue;
    const double e = sol.enr[cell.fuel_type - 1];
    const double g = cell.fuel_type >= 8 ? sol.gad[cell.fuel_type - 8] : 0.0;
    const double worth = e / (1.0 + cfg.gd_alpha * g);
    const double importance = 1.0 + (cell.is_edge ? cfg.s_edge : 0.0) +
                              (cell.is_water_adjacent ? cfg.s_water : 0.0);
    const double power = worth * importance;
    worth_sum += cell.multiplicity * worth;
    power_sum += cell.multiplicity * power;
    power_max = std::max(power_max, power);
  }
  const double mean_worth = worth_sum / fueled;
  PhysicsResult r;
  r.kinf = cfg.k_asym * mean_worth / (mean_worth + cfg.k_sat);
  r.ppf = power_max / (power_sum / fueled);
  return r;
}

PhysicsResult CachingEvaluator::evaluate(const SolutionVector& sol) {
  const std::string key = serialize(sol);
  {
    std::lock_guard lock{mu_};
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++hits_;
      return it->second;
    }
  }
  const PhysicsResult result = inner_->evaluate(sol);
  std::lock_guard lock{mu_};
  ++misses_;
  cache_.emplace(key, result);  // idempotent on duplicate key
  return result;
}

std::size_t CachingEvaluator::hits() const {
  std::lock_guard lock{mu_};
  return hits_;
}

std::size_t CachingEvaluator::misses() const {
  std::lock_guard lock{mu_};
  return misses_;
}

}  // namespace latticeopt
