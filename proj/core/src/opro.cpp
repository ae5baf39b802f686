#include <chrono>
#include <limits>

#include "engine_util.hpp"
#include "latticeopt/optimize.hpp"
#include "rand_util.hpp"

namespace latticeopt {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void LoopConfig::validate() const {
  if (batch_size < 1) throw ConfigError("loop: batch_size must be >= 1");
  if (max_steps < 1) throw ConfigError("loop: max_steps must be >= 1");
  if (initial_solutions < 1) throw ConfigError("loop: initial_solutions must be >= 1");
  if (archive_capacity < 1) throw ConfigError("loop: archive_capacity must be >= 1");
}

TrialReport run_opro(PromptStrategy strategy, Generator& generator, Evaluator& evaluator,
                     const ScoreConfig& scoring, const LoopConfig& loop,
                     const Problem& problem, std::uint64_t seed) {
  loop.validate();
  scoring.validate();
  problem.grid.validate();

  TrialReport report;
  report.seed = seed;
  report.engine = "opro";
  report.strategy = std::string(to_string(strategy));

  detail::Rng rng{seed};
  SolutionArchive archive{loop.archive_capacity};

  auto evaluate_scored = [&](const SolutionVector& sol) {
    const PhysicsResult ph = evaluator.evaluate(sol);
    ++report.total_evaluations;
    return EvaluationResult{ph.kinf, ph.ppf, score(ph.kinf, ph.ppf, scoring)};
  };

  auto track_best = [&](const SolutionVector& sol, const EvaluationResult& res) {
    if (report.total_evaluations == 1 || res.score > report.best_result.score) {
      report.best_solution = sol;
      report.best_result = res;
    }
  };

  for (int i = 0; i < loop.initial_solutions; ++i) {
    const SolutionVector sol = detail::random_solution(rng, problem.grid);
    const EvaluationResult res = evaluate_scored(sol);
    track_best(sol, res);
    archive.insert(sol, res);
  }
  report.initial_best = report.best_result.score;

  double prev_batch_max = std::numeric_limits<double>::quiet_NaN();
  for (int t = 0; t < loop.max_steps && report.best_result.score < loop.target_stop; ++t) {
    const MetaPrompt prompt =
        build_meta_prompt(strategy, archive, loop.batch_size, problem.map);

    const auto t0 = std::chrono::steady_clock::now();
    const std::string response = generator.generate(prompt);

    GenerationRecord record;
    record.step = t;
    record.prompt = prompt.text;
    record.response = response;
    record.latency_s = seconds_since(t0);
    if (auto usage = generator.last_token_usage()) {
      record.prompt_tokens = usage->first;
      record.completion_tokens = usage->second;
    }
    report.records.push_back(std::move(record));

    const ParseResult parsed = parse_response(response, problem.grid, loop.parse_mode);

    StepOutcome outcome;
    outcome.step = t;
    outcome.parse_rejects = static_cast<int>(parsed.rejects.size());
    report.total_rejects += outcome.parse_rejects;

    double batch_max = std::numeric_limits<double>::quiet_NaN();
    for (const auto& sol : parsed.candidates) {
      const EvaluationResult res = evaluate_scored(sol);
      track_best(sol, res);
      archive.insert(sol, res);
      outcome.candidates.emplace_back(sol, res);
      if (!(batch_max >= res.score)) batch_max = res.score;
    }

    outcome.best_so_far = report.best_result.score;
    report.progression.push_back(outcome.best_so_far);
    report.steps.push_back(std::move(outcome));
    report.total_steps = t + 1;

    // Algorithm-style plateau exit: consecutive batch maxima closer than
    // epsilon. Steps without evaluated candidates are skipped.
    if (loop.plateau_stop && !std::isnan(batch_max) && !std::isnan(prev_batch_max) &&
        batch_max - prev_batch_max < loop.epsilon_converge)
      break;
    if (!std::isnan(batch_max)) prev_batch_max = batch_max;
  }

  detail::finalize_steps_to_best(report);
  return report;
}

}  // namespace latticeopt
