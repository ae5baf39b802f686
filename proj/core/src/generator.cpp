#include "latticeopt/generator.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "rand_util.hpp"
#include "text_util.hpp"

namespace latticeopt {

namespace {

using nlohmann::json;

/// Deterministic offline stand-in for the LLM optimizer. Reads the archive
/// the same way a model would (from the rendered prompt), takes the best
/// solution (entries are ascending, so the last block) and emits batch_size
/// mutants: each gene independently moved one grid step up or down with the
/// configured probability, clamped to bounds.
class MockMutatorGenerator final : public Generator {
 public:
  MockMutatorGenerator(const GeneratorConfig& cfg, std::uint64_t seed, ParameterGrid grid)
      : grid_(grid), mutation_prob_(cfg.mutation_prob), rng_(seed) {}

  std::string generate(const MetaPrompt& prompt) override {
    const auto parsed = parse_response(prompt.text, grid_, ParseMode::SnapToGrid);
    if (parsed.candidates.empty())
      throw Error("mock generator: prompt contains no solution blocks");
    const SolutionVector base = parsed.candidates.back();

    const auto ea = detail::enr_axis(grid_);
    const auto ga = detail::gad_axis(grid_);
    std::string out;
    for (int i = 0; i < prompt.batch_size; ++i) {
      SolutionVector mutant = base;
      for (auto& e : mutant.enr)
        if (detail::rand_chance(rng_, mutation_prob_))
          e = detail::step_clamped(ea, e, detail::rand_chance(rng_, 0.5));
      for (auto& g : mutant.gad)
        if (detail::rand_chance(rng_, mutation_prob_))
          g = detail::step_clamped(ga, g, detail::rand_chance(rng_, 0.5));
      out += "<sol> " + serialize(mutant) + " <\\sol>\n";
    }
    return out;
  }

 private:
  ParameterGrid grid_;
  double mutation_prob_;
  detail::Rng rng_;
};

class ReplayGenerator final : public Generator {
 public:
  explicit ReplayGenerator(const GeneratorConfig& cfg)
      : records_(RunLog::read(cfg.transcript_path)) {}

  std::string generate(const MetaPrompt&) override {
    if (next_ >= records_.size())
      throw ReplayExhausted("replay transcript exhausted after " +
                            std::to_string(records_.size()) + " responses");
    return records_[next_++].response;
  }

 private:
  std::vector<GenerationRecord> records_;
  std::size_t next_ = 0;
};

}  // namespace

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Http: return "http";
    case Backend::MockMutator: return "mock";
    case Backend::Replay: return "replay";
  }
  return "unknown";
}

Backend backend_from_string(std::string_view name) {
  if (name == "http") return Backend::Http;
  if (name == "mock" || name == "mock_mutator") return Backend::MockMutator;
  if (name == "replay") return Backend::Replay;
  throw ConfigError("unknown generator backend: " + std::string(name));
}

void GeneratorConfig::validate() const {
  if (backend == Backend::Http) {
    if (endpoint.empty() || model.empty() || api_key_env.empty())
      throw ConfigError("http backend requires endpoint, model and api_key_env");
  }
  if (backend == Backend::Replay && transcript_path.empty())
    throw ConfigError("replay backend requires transcript_path");
  if (mutation_prob < 0.0 || mutation_prob > 1.0)
    throw ConfigError("mutation_prob must lie in [0,1]");
}

std::unique_ptr<Generator> make_http_generator(const GeneratorConfig& cfg);  // http_generator.cpp

std::unique_ptr<Generator> make_generator(const GeneratorConfig& cfg, std::uint64_t seed,
                                          const ParameterGrid& grid) {
  cfg.validate();
  switch (cfg.backend) {
    case Backend::MockMutator:
      return std::make_unique<MockMutatorGenerator>(cfg, seed, grid);
    case Backend::Replay:
      return std::make_unique<ReplayGenerator>(cfg);
    case Backend::Http:
      return make_http_generator(cfg);
  }
  throw ConfigError("unknown generator backend");
}

double retry_backoff_s(int attempt, double base_s) {
  return base_s * std::pow(2.0, attempt);
}

RunLog::RunLog(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::out | std::ios::trunc);
  if (!out_) throw IoError("cannot open run log for writing: " + path.string());
}

void RunLog::append(const GenerationRecord& record) {
  out_ << to_json_line(record) << '\n';
  out_.flush();
  if (!out_) throw IoError("write to run log failed: " + path_.string());
}

std::vector<GenerationRecord> RunLog::read(const std::filesystem::path& path) {
  std::ifstream in{path};
  if (!in) throw IoError("cannot open transcript: " + path.string());
  std::vector<GenerationRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    records.push_back(generation_record_from_json(line));
  }
  return records;
}

std::string to_json_line(const GenerationRecord& record) {
  json j;
  j["trial"] = record.trial;
  j["step"] = record.step;
  j["prompt"] = record.prompt;
  j["response"] = record.response;
  j["latency_s"] = record.latency_s;
  if (record.prompt_tokens) j["prompt_tokens"] = *record.prompt_tokens;
  if (record.completion_tokens) j["completion_tokens"] = *record.completion_tokens;
  return j.dump();
}

GenerationRecord generation_record_from_json(const std::string& line) {
  const auto j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw IoError("malformed transcript line: " + line.substr(0, 120));
  GenerationRecord r;
  r.trial = j.value("trial", 0);
  r.step = j.value("step", 0);
  r.prompt = j.value("prompt", "");
  r.response = j.value("response", "");
  r.latency_s = j.value("latency_s", 0.0);
  if (j.contains("prompt_tokens")) r.prompt_tokens = j["prompt_tokens"].get<long>();
  if (j.contains("completion_tokens"))
    r.completion_tokens = j["completion_tokens"].get<long>();
  return r;
}

}  // namespace latticeopt
