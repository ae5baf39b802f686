#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "latticeopt/lattice.hpp"
#include "latticeopt/scoring.hpp"

namespace latticeopt {

enum class PromptStrategy {
  NoContext,        // minimal instructions, history carries only scores
  DetailedContext,  // full problem description, history carries kinf/ppf too
};

std::string_view to_string(PromptStrategy strategy);
PromptStrategy prompt_strategy_from_string(std::string_view name);

/// Bounded, score-sorted history of (solution, result) pairs. Entries are
/// kept ascending by score (best last); duplicate serialized solutions are
/// ignored; the lowest-score entry is evicted when full.
class SolutionArchive {
 public:
  struct Entry {
    SolutionVector solution;
    EvaluationResult result;
    std::string key;  // serialized solution, the dedupe identity
  };

  explicit SolutionArchive(std::size_t capacity = 20) : capacity_(capacity) {}

  /// Returns true when the entry ended up in the archive.
  bool insert(const SolutionVector& sol, const EvaluationResult& result);

  const std::vector<Entry>& entries() const { return entries_; }
  const Entry& best() const { return entries_.back(); }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::vector<Entry> entries_;
};

/// A fully rendered instruction text for the LLM optimizer.
struct MetaPrompt {
  std::string text;
  PromptStrategy strategy = PromptStrategy::DetailedContext;
  int batch_size = 0;
};

/// Renders the template for the strategy with the archive's solution-score
/// blocks (archive order, ascending score) and the batch size substituted.
/// Throws EmptyArchive when the archive has no entries.
MetaPrompt build_meta_prompt(PromptStrategy strategy, const SolutionArchive& archive,
                             int batch_size, const LatticeMap& map = LatticeMap::ge14());

/// Renders one archive entry the way it appears inside the meta-prompt.
std::string render_pair(const SolutionArchive::Entry& entry, PromptStrategy strategy);

enum class ParseMode {
  Strict,      // off-grid or out-of-bound values reject the block
  SnapToGrid,  // values are clamped and rounded onto the grid
};

enum class RejectReason {
  BadTokenCount,
  NonNumeric,
  OutOfBounds,
  OffGrid,
};

std::string_view to_string(RejectReason reason);

struct ParseReject {
  std::string block;  // raw block body
  RejectReason reason = RejectReason::BadTokenCount;
};

struct ParseResult {
  std::vector<SolutionVector> candidates;
  std::vector<ParseReject> rejects;
};

/// Scans arbitrary text for <sol> ... <\sol> blocks (</sol> also closes; a
/// truncated trailing closer without '>' is tolerated) and converts each
/// body to a candidate or a reject. Never fails.
ParseResult parse_response(std::string_view text, const ParameterGrid& grid,
                           ParseMode mode = ParseMode::SnapToGrid);

}  // namespace latticeopt
