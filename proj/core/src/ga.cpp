#include <algorithm>
#include <numeric>

#include "engine_util.hpp"
#include "latticeopt/optimize.hpp"
#include "rand_util.hpp"

namespace latticeopt {

namespace {

struct Individual {
  SolutionVector sol;
  EvaluationResult res;
};

// Indices of the population sorted by descending score.
std::vector<std::size_t> rank_desc(const std::vector<Individual>& pop) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pop[a].res.score > pop[b].res.score;
  });
  return order;
}

std::size_t tournament(const std::vector<Individual>& pop, int k, detail::Rng& rng) {
  std::size_t winner = detail::rand_below(rng, pop.size());
  for (int i = 1; i < k; ++i) {
    const std::size_t challenger = detail::rand_below(rng, pop.size());
    if (pop[challenger].res.score > pop[winner].res.score) winner = challenger;
  }
  return winner;
}

}  // namespace

void GaConfig::validate() const {
  if (population < 2) throw ConfigError("ga: population must be >= 2");
  if (generations < 1) throw ConfigError("ga: generations must be >= 1");
  if (tournament_k < 1) throw ConfigError("ga: tournament_k must be >= 1");
  if (elitism < 0 || elitism >= population)
    throw ConfigError("ga: elitism must lie in [0, population)");
  if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate < 0.0 ||
      mutation_rate > 1.0)
    throw ConfigError("ga: rates must lie in [0,1]");
}

TrialReport run_ga(Evaluator& evaluator, const ScoreConfig& scoring, const GaConfig& ga,
                   const Problem& problem, std::uint64_t seed) {
  ga.validate();
  scoring.validate();
  problem.grid.validate();

  TrialReport report;
  report.seed = seed;
  report.engine = "ga";

  detail::Rng rng{seed};
  const auto ea = detail::enr_axis(problem.grid);
  const auto ga_axis = detail::gad_axis(problem.grid);

  auto evaluate_scored = [&](const SolutionVector& sol) {
    const PhysicsResult ph = evaluator.evaluate(sol);
    ++report.total_evaluations;
    return EvaluationResult{ph.kinf, ph.ppf, score(ph.kinf, ph.ppf, scoring)};
  };

  auto track_best = [&](const Individual& ind) {
    if (report.total_evaluations == 1 || ind.res.score > report.best_result.score) {
      report.best_solution = ind.sol;
      report.best_result = ind.res;
    }
  };

  std::vector<Individual> pop;
  pop.reserve(ga.population);
  for (int i = 0; i < ga.population; ++i) {
    Individual ind;
    ind.sol = detail::random_solution(rng, problem.grid);
    ind.res = evaluate_scored(ind.sol);
    track_best(ind);
    pop.push_back(std::move(ind));
  }
  report.initial_best = report.best_result.score;

  auto mutate_gene = [&](double v, const detail::GridAxis& axis) {
    return detail::step_reflected(axis, v, detail::rand_chance(rng, 0.5));
  };

  const double target_stop = scoring.base - 1e-9;
  for (int g = 0; g < ga.generations && report.best_result.score < target_stop; ++g) {
    const auto order = rank_desc(pop);
    std::vector<Individual> next;
    next.reserve(pop.size());
    for (int e = 0; e < ga.elitism; ++e) next.push_back(pop[order[e]]);

    StepOutcome outcome;
    outcome.step = g;
    while (next.size() < pop.size()) {
      const Individual& p1 = pop[tournament(pop, ga.tournament_k, rng)];
      const Individual& p2 = pop[tournament(pop, ga.tournament_k, rng)];

      SolutionVector child = p1.sol;
      if (detail::rand_chance(rng, ga.crossover_rate)) {
        for (std::size_t i = 0; i < child.enr.size(); ++i)
          if (detail::rand_chance(rng, 0.5)) child.enr[i] = p2.sol.enr[i];
        for (std::size_t i = 0; i < child.gad.size(); ++i)
          if (detail::rand_chance(rng, 0.5)) child.gad[i] = p2.sol.gad[i];
      }
      for (auto& e : child.enr)
        if (detail::rand_chance(rng, ga.mutation_rate)) e = mutate_gene(e, ea);
      for (auto& gd : child.gad)
        if (detail::rand_chance(rng, ga.mutation_rate)) gd = mutate_gene(gd, ga_axis);

      Individual ind;
      ind.sol = child;
      ind.res = evaluate_scored(child);
      track_best(ind);
      outcome.candidates.emplace_back(ind.sol, ind.res);
      next.push_back(std::move(ind));
    }
    pop = std::move(next);

    outcome.best_so_far = report.best_result.score;
    report.progression.push_back(outcome.best_so_far);
    report.steps.push_back(std::move(outcome));
    report.total_steps = g + 1;
  }

  detail::finalize_steps_to_best(report);
  return report;
}

TrialReport run_random_baseline(Evaluator& evaluator, const ScoreConfig& scoring,
                                long budget, const Problem& problem, std::uint64_t seed) {
  if (budget < 1) throw ConfigError("random baseline: budget must be >= 1");
  scoring.validate();
  problem.grid.validate();

  TrialReport report;
  report.seed = seed;
  report.engine = "random";

  detail::Rng rng{seed};
  for (long i = 0; i < budget; ++i) {
    const SolutionVector sol = detail::random_solution(rng, problem.grid);
    const PhysicsResult ph = evaluator.evaluate(sol);
    const EvaluationResult res{ph.kinf, ph.ppf, score(ph.kinf, ph.ppf, scoring)};
    ++report.total_evaluations;
    if (i == 0 || res.score > report.best_result.score) {
      report.best_solution = sol;
      report.best_result = res;
    }
    if (i == 0) report.initial_best = res.score;

    StepOutcome outcome;
    outcome.step = static_cast<int>(i);
    outcome.candidates.emplace_back(sol, res);
    outcome.best_so_far = report.best_result.score;
    report.progression.push_back(outcome.best_so_far);
    report.steps.push_back(std::move(outcome));
  }
  report.total_steps = static_cast<int>(budget);

  detail::finalize_steps_to_best(report);
  return report;
}

}  // namespace latticeopt
