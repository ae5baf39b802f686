#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latticeopt/lattice.hpp"

namespace latticeopt {

/// kinf/ppf pair produced by a lattice physics evaluation.
struct PhysicsResult {
  double kinf = 0.0;
  double ppf = 0.0;
};

/// Maps a solution to (kinf, ppf). Implementations must be deterministic for
/// a fixed configuration.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual PhysicsResult evaluate(const SolutionVector& sol) = 0;

  /// Pure evaluators may be called concurrently without coordination.
  virtual bool is_pure() const { return false; }
};

/// Reduced-order stand-in for a lattice physics code: enrichment raises
/// reactivity, gadolinia suppresses it with saturating worth, edge and
/// water-adjacent pins peak.
struct SurrogateConfig {
  double k_asym = 1.30;   // kinf asymptote for large mean worth
  double k_sat = 1.0;     // worth at half asymptote, wt%
  double gd_alpha = 0.5;  // gadolinia suppression per wt%
  double s_edge = 0.06;   // importance bump for assembly-edge pins
  double s_water = 0.08;  // importance bump for water-adjacent pins

  void validate() const;
};

/// Per fueled half-cell p with multiplicity m, enrichment e, gadolinia g:
///   worth      w = e / (1 + gd_alpha*g)
///   importance s = 1 + s_edge*[edge] + s_water*[water-adjacent]
///   pin power  P = w*s
///   mean worth E = sum(m*w) / fueled pins
///   kinf = k_asym * E / (E + k_sat)
///   ppf  = max(P) / (sum(m*P) / fueled pins)
PhysicsResult surrogate_evaluate(const SolutionVector& sol, const LatticeMap& map,
                                 const SurrogateConfig& cfg = {});

class SurrogateEvaluator : public Evaluator {
 public:
  explicit SurrogateEvaluator(LatticeMap map, SurrogateConfig cfg = {})
      : map_(std::move(map)), cfg_(cfg) {
    cfg_.validate();
  }

  PhysicsResult evaluate(const SolutionVector& sol) override {
    return surrogate_evaluate(sol, map_, cfg_);
  }
  bool is_pure() const override { return true; }

 private:
  LatticeMap map_;
  SurrogateConfig cfg_;
};

/// Runs an external lattice code per evaluation. Wire protocol, bit exact:
/// one line of UTF-8 JSON {"enr":[...],"gad":[...]} + newline on stdin; one
/// line {"kinf":x,"ppf":y} + newline expected on stdout; exit status 0.
class ExternalEvaluator : public Evaluator {
 public:
  /// argv[0] is the program path; remaining entries are its arguments.
  ExternalEvaluator(std::vector<std::string> argv, double timeout_s = 60.0);

  /// Throws SpawnFailed, Timeout, ProtocolError or EvaluatorReportedError.
  PhysicsResult evaluate(const SolutionVector& sol) override;

 private:
  std::vector<std::string> argv_;
  double timeout_s_;
};

/// Memoizes an inner evaluator keyed by the serialized solution string.
/// Safe under concurrent insertion of the same key (idempotent writes).
class CachingEvaluator : public Evaluator {
 public:
  explicit CachingEvaluator(std::shared_ptr<Evaluator> inner) : inner_(std::move(inner)) {}

  PhysicsResult evaluate(const SolutionVector& sol) override;
  bool is_pure() const override { return inner_->is_pure(); }

  std::size_t hits() const;
  std::size_t misses() const;

 private:
  std::shared_ptr<Evaluator> inner_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, PhysicsResult> cache_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace latticeopt
