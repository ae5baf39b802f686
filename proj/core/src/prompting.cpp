#include "latticeopt/prompting.hpp"

#include <algorithm>
#include <cmath>

#include "rand_util.hpp"
#include "text_util.hpp"

namespace latticeopt {

namespace {

// Templates as published; {pairs}, {batch_size} and {lattice_map} are
// substituted at build time. The copies under core/prompts/ are the golden
// reference files; a test keeps both in sync.
constexpr std::string_view kNoContextTemplate =
    R"(Your task is to generate solutions from an optimization problem.
Below are examples of solution-score pairs:

{pairs}
Generate exactly {batch_size} new solutions that:
- Are distinct from all previous solutions.
- Have a higher score than the highest provided.

The solutions should start with <sol> and end with <\sol> with a comma between parameters.
)";

constexpr std::string_view kDetailedContextTemplate =
    R"(You are an optimization agent and an expert in nuclear reactor design.
Your task is to generate a 10×10 GE-14 fuel lattice design that satisfies the following conditions:

- Fuel Enrichment (FUE#_enr): Maximum 5.0% with increments of 0.1%.
- Gadolinia Content (FUE#_gads): Maximum 10.0% with increments of 1.0%.

Lattice Configuration:
Here is the half-lattice map (symmetric arrangement assumed):

{lattice_map}
Objective:
Your goal is to generate new solutions that achieve:
- Lattice criticality: kinf = 1.05
- Pin Peaking Factor (PPF): < 1.30
- Higher score than any of the given solutions.

The objective function (score) is determined based on these parameters, but you are not to guess kinf, PPF, or score—these will be calculated externally using Casmo-5 simulations and a processing code.

Solution Format:
Each solution must include values for the following parameters:
FUE1_enr, FUE2_enr, FUE3_enr, FUE4_enr, FUE5_enr, FUE6_enr, FUE7_enr, FUE8_enr, FUE8_gads, FUE9_enr, FUE9_gads, FUE10_enr, FUE10_gads, FUE11_enr, FUE11_gads

Below are examples of solution-score pairs:

{pairs}
Generate exactly {batch_size} new solutions that:
- Are distinct from all previous solutions.
- Have a higher score than the highest provided.
- Respect the relationships between fuel enrichment, gadolinia content, kinf, and PPF based on logical reasoning.

The solutions should start with <sol> and end with <\sol> with a comma between parameters.
)";

void replace_all(std::string& text, std::string_view needle, std::string_view with) {
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), with);
    pos += with.size();
  }
}

// Finds the next closing tag at or after `from`; both the published
// backslash form and the XML-style slash are accepted, with or without the
// trailing '>'.
std::size_t find_closer(std::string_view text, std::size_t from, std::size_t* end) {
  const std::string_view closers[] = {"<\\sol", "</sol"};
  std::size_t best = std::string_view::npos;
  std::size_t best_len = 0;
  for (auto closer : closers) {
    auto pos = text.find(closer, from);
    if (pos < best) {
      best = pos;
      best_len = closer.size();
      if (pos + best_len < text.size() && text[pos + best_len] == '>') ++best_len;
    }
  }
  if (best != std::string_view::npos) *end = best + best_len;
  return best;
}

}  // namespace

std::string_view to_string(PromptStrategy strategy) {
  return strategy == PromptStrategy::NoContext ? "no_context" : "detailed";
}

PromptStrategy prompt_strategy_from_string(std::string_view name) {
  if (name == "no_context" || name == "none") return PromptStrategy::NoContext;
  if (name == "detailed" || name == "detailed_context") return PromptStrategy::DetailedContext;
  throw ConfigError("unknown prompt strategy: " + std::string(name));
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::BadTokenCount: return "BadTokenCount";
    case RejectReason::NonNumeric: return "NonNumeric";
    case RejectReason::OutOfBounds: return "OutOfBounds";
    case RejectReason::OffGrid: return "OffGrid";
  }
  return "Unknown";
}

bool SolutionArchive::insert(const SolutionVector& sol, const EvaluationResult& result) {
  Entry entry{sol, result, serialize(sol)};
  for (const auto& existing : entries_) {
    if (existing.key == entry.key) return false;
  }
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), entry,
                              [](const Entry& a, const Entry& b) {
                                return a.result.score < b.result.score;
                              });
  entries_.insert(pos, std::move(entry));
  if (entries_.size() > capacity_) {
    entries_.erase(entries_.begin());  // lowest score evicted first
    return true;
  }
  return true;
}

std::string render_pair(const SolutionArchive::Entry& entry, PromptStrategy strategy) {
  std::string out = "<sol> " + entry.key + " <\\sol>\n";
  if (strategy == PromptStrategy::DetailedContext) {
    out += "kinf: " + detail::format_fixed(entry.result.kinf, 5) +
           ", ppf: " + detail::format_fixed(entry.result.ppf, 3) + "\n";
  }
  out += "score: " + detail::format_trimmed(entry.result.score, 2) + "\n\n";
  return out;
}

MetaPrompt build_meta_prompt(PromptStrategy strategy, const SolutionArchive& archive,
                             int batch_size, const LatticeMap& map) {
  if (archive.empty()) throw EmptyArchive("build_meta_prompt: archive is empty");
  if (batch_size < 1) throw ConfigError("build_meta_prompt: batch_size must be >= 1");

  std::string text{strategy == PromptStrategy::NoContext ? kNoContextTemplate
                                                         : kDetailedContextTemplate};
  std::string pairs;
  for (const auto& entry : archive.entries()) pairs += render_pair(entry, strategy);

  replace_all(text, "{lattice_map}", map.render());
  replace_all(text, "{pairs}\n", pairs);
  replace_all(text, "{batch_size}", std::to_string(batch_size));

  return MetaPrompt{std::move(text), strategy, batch_size};
}

ParseResult parse_response(std::string_view text, const ParameterGrid& grid, ParseMode mode) {
  ParseResult result;
  std::size_t cursor = 0;
  while (true) {
    const auto open = text.find("<sol>", cursor);
    if (open == std::string_view::npos) break;
    std::size_t block_end = 0;
    const auto close = find_closer(text, open + 5, &block_end);
    if (close == std::string_view::npos) break;

    const std::string_view body = detail::trim(text.substr(open + 5, close - open - 5));
    cursor = block_end;

    const auto tokens = detail::split(body, ',');
    if (tokens.size() != kSolutionSize) {
      result.rejects.push_back({std::string(body), RejectReason::BadTokenCount});
      continue;
    }

    std::array<double, kSolutionSize> values{};
    bool numeric = true;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      auto v = detail::try_parse_double(tokens[i]);
      if (!v || !std::isfinite(*v)) {
        numeric = false;
        break;
      }
      values[i] = *v;
    }
    if (!numeric) {
      result.rejects.push_back({std::string(body), RejectReason::NonNumeric});
      continue;
    }

    if (mode == ParseMode::Strict) {
      const SolutionVector parsed = SolutionVector::from_flat(values);
      bool in_bounds = true;
      for (double e : parsed.enr)
        in_bounds = in_bounds && e >= grid.enr_min - 1e-9 && e <= grid.enr_max + 1e-9;
      for (double g : parsed.gad)
        in_bounds = in_bounds && g >= grid.gad_min - 1e-9 && g <= grid.gad_max + 1e-9;
      if (!in_bounds) {
        result.rejects.push_back({std::string(body), RejectReason::OutOfBounds});
        continue;
      }
      if (!satisfies_grid(parsed, grid)) {
        result.rejects.push_back({std::string(body), RejectReason::OffGrid});
        continue;
      }
    }
    // Snapping canonicalizes accepted values onto exact grid points in both
    // modes; in Strict mode it is a semantic no-op.
    result.candidates.push_back(snap_to_grid(values, grid));
  }
  return result;
}

}  // namespace latticeopt
