#pragma once

#include <chrono>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "clu/roles.hpp"

namespace clu {

/// One request/response pair, recorded for every backend call.
struct ReasonerExchange {
  AgentRole role;
  std::string request_text;
  std::string response_text;
  std::chrono::microseconds latency{0};
  int attempt = 0;  // 0 = first try, 1.. = repair retries
};

/// Abstract reasoner boundary. complete() is safe to call concurrently; the
/// exchange log is append-only and never mutated.
class Reasoner {
 public:
  virtual ~Reasoner() = default;

  std::string complete(AgentRole role, const std::string& request_text, int attempt = 0);

  std::vector<ReasonerExchange> exchanges() const;
  std::size_t exchange_count() const;

 protected:
  virtual std::string do_complete(AgentRole role, const std::string& request_text) = 0;

 private:
  mutable std::mutex log_mutex_;
  std::vector<ReasonerExchange> log_;
};

/// One rule of a scripted backend. Steps are tried in order; the first one
/// whose role matches (or is a wildcard), whose substring occurs in the
/// rendered request, and which has uses remaining, fires.
struct ScriptStep {
  std::optional<AgentRole> role;          // nullopt = wildcard
  std::optional<std::string> match_substring;
  std::string response_template;          // may contain {{oracle:i}}
  std::optional<int> max_uses;
};

/// Parses a JSON-Lines script file: one step object per line with keys
/// role ("operational", ..., or "*"), response, and optional match /
/// max_uses. Blank lines and lines starting with '#' are skipped. Throws
/// ParseError carrying the line number for unknown roles, unknown keys, or
/// malformed {{oracle:i}} macros.
std::vector<ScriptStep> load_script(const std::filesystem::path& path);
std::vector<ScriptStep> parse_script(const std::string& content, const std::string& origin_name);

/// Deterministic offline backend. {{oracle:i}} in a firing step's response
/// expands to the Problem-1 encoding (position i) of the text found between
/// the input delimiters of the request. Step-use accounting is serialized
/// internally, so max_uses semantics hold under concurrent calls.
class ScriptedReasoner final : public Reasoner {
 public:
  explicit ScriptedReasoner(std::vector<ScriptStep> script);

  std::size_t step_count() const { return script_.size(); }

 protected:
  std::string do_complete(AgentRole role, const std::string& request_text) override;

 private:
  std::vector<ScriptStep> script_;
  std::vector<int> uses_left_;  // -1 = unlimited
  std::mutex step_mutex_;
};

struct ReasonerConfig {
  std::string endpoint_url;  // full chat-completions URL
  std::string model_name = "gpt-4o-mini";
  double temperature = 0.0;
  int max_output_tokens = 512;
  std::chrono::milliseconds request_timeout{30000};
  int max_retries = 3;
  std::string api_key_env = "CLU_API_KEY";
};

/// Live chat-completions client: one POST per call, single user message,
/// exponential backoff (500 ms doubling) on timeouts/429/5xx only. The
/// CLU_API_BASE environment variable, when set, overrides the endpoint as
/// <base>/chat/completions.
class HttpReasoner final : public Reasoner {
 public:
  explicit HttpReasoner(ReasonerConfig config);

  const std::string& endpoint_url() const { return config_.endpoint_url; }

 protected:
  std::string do_complete(AgentRole role, const std::string& request_text) override;

 private:
  ReasonerConfig config_;
  std::string api_key_;
};

}  // namespace clu
