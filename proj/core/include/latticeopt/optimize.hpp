#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latticeopt/evaluator.hpp"
#include "latticeopt/generator.hpp"
#include "latticeopt/lattice.hpp"
#include "latticeopt/prompting.hpp"
#include "latticeopt/scoring.hpp"

namespace latticeopt {

/// Iterative-refinement loop parameters.
struct LoopConfig {
  int batch_size = 5;
  int max_steps = 60;
  int initial_solutions = 3;
  double target_stop = 100.0 - 1e-9;
  bool plateau_stop = false;       // stop when batch-max improvement < epsilon
  double epsilon_converge = 1e-6;  // the convergence threshold
  ParseMode parse_mode = ParseMode::SnapToGrid;
  std::size_t archive_capacity = 20;

  void validate() const;
};

/// Generational GA parameters. The operator suite is a textbook
/// configuration: tournament selection, uniform crossover, per-gene one-step
/// mutation with reflection, elitism.
struct GaConfig {
  int population = 20;
  int generations = 50;
  int tournament_k = 3;
  double crossover_rate = 0.9;
  double mutation_rate = 1.0 / 15.0;
  int elitism = 2;

  void validate() const;
};

/// One optimization step: candidates with results, running best, rejects.
struct StepOutcome {
  int step = 0;  // 0-based iteration index
  std::vector<std::pair<SolutionVector, EvaluationResult>> candidates;
  double best_so_far = 0.0;
  int parse_rejects = 0;
};

/// Outcome of one trial, for any engine.
struct TrialReport {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string engine;    // "opro" | "ga" | "random"
  std::string strategy;  // prompt strategy for opro, empty otherwise

  SolutionVector best_solution;
  EvaluationResult best_result;
  double initial_best = 0.0;  // best score right after initialization
  // First attainment of the final best: 0 when initialization already held
  // it, otherwise the 1-based count of iterations needed.
  int steps_to_best = 0;
  int total_steps = 0;
  long total_evaluations = 0;
  long total_rejects = 0;
  std::vector<double> progression;  // best-so-far after each iteration

  bool failed = false;
  std::string error;

  // In-memory extras, not serialized.
  std::vector<StepOutcome> steps;
  std::vector<GenerationRecord> records;
};

/// Runs the iterative LLM refinement loop: seed the archive with random
/// evaluated solutions, then per step build the meta-prompt, generate,
/// parse, evaluate, score and fold results back into the archive. Stops on
/// target_stop, max_steps, or (when enabled) the plateau criterion.
TrialReport run_opro(PromptStrategy strategy, Generator& generator, Evaluator& evaluator,
                     const ScoreConfig& scoring, const LoopConfig& loop,
                     const Problem& problem, std::uint64_t seed);

/// Generational GA baseline over the same grid-encoded representation.
TrialReport run_ga(Evaluator& evaluator, const ScoreConfig& scoring, const GaConfig& ga,
                   const Problem& problem, std::uint64_t seed);

/// Uniform random search; the sanity floor for comparisons.
TrialReport run_random_baseline(Evaluator& evaluator, const ScoreConfig& scoring,
                                long budget, const Problem& problem, std::uint64_t seed);

}  // namespace latticeopt
