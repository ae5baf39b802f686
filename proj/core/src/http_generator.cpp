#ifdef LATTICEOPT_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

#include "latticeopt/generator.hpp"

namespace latticeopt {

namespace {

using nlohmann::json;

struct SplitUrl {
  std::string base;    // scheme://host[:port]
  std::string prefix;  // path prefix, may be empty
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ConfigError("endpoint must include a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

/// Chat-completion client against an OpenAI-compatible endpoint. The whole
/// meta-prompt travels as a single user message; the API key is read from
/// the configured environment variable and never logged.
class HttpGenerator final : public Generator {
 public:
  explicit HttpGenerator(const GeneratorConfig& cfg) : cfg_(cfg) {
    const char* key = std::getenv(cfg.api_key_env.c_str());
    if (key == nullptr || *key == '\0')
      throw AuthError("API key environment variable is not set: " + cfg.api_key_env);
    api_key_ = key;
#ifndef LATTICEOPT_HAVE_OPENSSL
    if (cfg.endpoint.rfind("https://", 0) == 0)
      throw ConfigError("built without OpenSSL; https endpoints are unavailable");
#endif
  }

  std::string generate(const MetaPrompt& prompt) override {
    const SplitUrl url = split_url(cfg_.endpoint);

    json body;
    body["model"] = cfg_.model;
    body["messages"] = json::array({json{{"role", "user"}, {"content", prompt.text}}});
    body["temperature"] = cfg_.temperature;
    body["max_tokens"] = cfg_.max_tokens;
    const std::string payload = body.dump();

    httplib::Client client{url.base};
    const auto timeout = std::chrono::duration<double>(cfg_.timeout_s);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_default_headers({{"Authorization", "Bearer " + api_key_}});

    std::string last_error;
    for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
      if (attempt > 0)
        std::this_thread::sleep_for(std::chrono::duration<double>(
            retry_backoff_s(attempt - 1, cfg_.backoff_base_s)));

      auto res = client.Post(url.prefix + "/chat/completions", payload, "application/json");
      if (!res) {
        last_error = "transport: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status == 401 || res->status == 403)
        throw AuthError("endpoint rejected credentials (HTTP " +
                        std::to_string(res->status) + ")");
      if (retryable_status(res->status)) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      if (res->status < 200 || res->status >= 300)
        throw TransportError("endpoint returned HTTP " + std::to_string(res->status) + ": " +
                             res->body.substr(0, 200));
      return extract_text(res->body);
    }
    throw TransportError("generation failed after " + std::to_string(cfg_.max_retries + 1) +
                         " attempts; last error: " + last_error);
  }

  std::optional<std::pair<long, long>> last_token_usage() const override { return usage_; }

 private:
  std::string extract_text(const std::string& body) {
    const auto payload = json::parse(body, nullptr, false);
    if (payload.is_discarded() || !payload.contains("choices") ||
        !payload["choices"].is_array() || payload["choices"].empty())
      throw TransportError("malformed chat-completion response: " + body.substr(0, 200));
    const auto& choice = payload["choices"][0];
    if (!choice.contains("message") || !choice["message"].contains("content") ||
        !choice["message"]["content"].is_string())
      throw TransportError("chat-completion response lacks message content");
    usage_.reset();
    if (payload.contains("usage") && payload["usage"].is_object()) {
      const auto& u = payload["usage"];
      if (u.contains("prompt_tokens") && u.contains("completion_tokens"))
        usage_ = {u["prompt_tokens"].get<long>(), u["completion_tokens"].get<long>()};
    }
    return choice["message"]["content"].get<std::string>();
  }

  GeneratorConfig cfg_;
  std::string api_key_;
  std::optional<std::pair<long, long>> usage_;
};

}  // namespace

std::unique_ptr<Generator> make_http_generator(const GeneratorConfig& cfg) {
  return std::make_unique<HttpGenerator>(cfg);
}

}  // namespace latticeopt
