#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latticeopt/lattice.hpp"
#include "latticeopt/prompting.hpp"

namespace latticeopt {

enum class Backend {
  Http,         // chat-completion endpoint
  MockMutator,  // seeded offline hill-climber stand-in
  Replay,       // stored transcript playback
};

std::string_view to_string(Backend backend);
Backend backend_from_string(std::string_view name);

struct GeneratorConfig {
  Backend backend = Backend::MockMutator;

  // Http
  std::string endpoint;  // base URL, e.g. http://host:port/v1
  std::string model;
  std::string api_key_env = "LATTICEOPT_API_KEY";
  double temperature = 1.0;
  int max_tokens = 4096;
  double timeout_s = 120.0;
  int max_retries = 3;
  double backoff_base_s = 0.5;

  // MockMutator
  double mutation_prob = 0.3;  // per-gene +-1 step probability

  // Replay
  std::string transcript_path;

  void validate() const;
};

/// One generation event, stored raw for reproducibility.
struct GenerationRecord {
  int trial = 0;
  int step = 0;
  std::string prompt;
  std::string response;
  double latency_s = 0.0;
  std::optional<long> prompt_tokens;
  std::optional<long> completion_tokens;
};

/// Produces a raw response text for a meta-prompt.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string generate(const MetaPrompt& prompt) = 0;

  /// (prompt, completion) token counts of the last call, when the backend
  /// reports them.
  virtual std::optional<std::pair<long, long>> last_token_usage() const {
    return std::nullopt;
  }
};

/// Builds the backend named by the config. The seed drives offline
/// generators only; Http ignores it.
std::unique_ptr<Generator> make_generator(const GeneratorConfig& cfg, std::uint64_t seed,
                                          const ParameterGrid& grid);

/// Exponential backoff schedule: base * 2^attempt seconds.
double retry_backoff_s(int attempt, double base_s);

/// Append-only JSONL sink for GenerationRecords; one object per line,
/// flushed after each record.
class RunLog {
 public:
  explicit RunLog(const std::filesystem::path& path);

  void append(const GenerationRecord& record);

  /// Reads a JSONL transcript back into records (also the Replay format).
  static std::vector<GenerationRecord> read(const std::filesystem::path& path);

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

std::string to_json_line(const GenerationRecord& record);
GenerationRecord generation_record_from_json(const std::string& line);

}  // namespace latticeopt
