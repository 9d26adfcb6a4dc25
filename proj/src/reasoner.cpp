#include "clu/reasoner.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clu/crypto_task.hpp"
#include "clu/errors.hpp"
#include "clu/text.hpp"

namespace clu {

namespace {

using nlohmann::json;

std::string_view role_token(AgentRole role) { return to_string(role); }

/// Validates every {{...}} occurrence as a well-formed {{oracle:i}} macro.
void validate_macros(const std::string& response, const std::string& where) {
  std::size_t pos = 0;
  while ((pos = response.find("{{", pos)) != std::string::npos) {
    const std::size_t close = response.find("}}", pos);
    if (close == std::string::npos) throw ParseError(where + ": unterminated {{...}} macro");
    const std::string inner = response.substr(pos + 2, close - pos - 2);
    if (!text::starts_with(inner, "oracle:")) {
      throw ParseError(where + ": unknown macro {{" + inner + "}}");
    }
    const std::string digits = inner.substr(7);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
        std::stol(digits) < 1) {
      throw ParseError(where + ": malformed oracle macro {{" + inner + "}}");
    }
    pos = close + 2;
  }
}

std::string expand_macros(const std::string& response_template, const std::string& request_text) {
  if (response_template.find("{{oracle:") == std::string::npos) return response_template;

  const std::size_t open = request_text.find(kInputOpen);
  if (open == std::string::npos) {
    throw BackendError("oracle macro: request carries no " + std::string(kInputOpen) +
                       " delimited input");
  }
  const std::size_t begin = open + kInputOpen.size();
  const std::size_t close = request_text.find(kInputClose, begin);
  if (close == std::string::npos) {
    throw BackendError("oracle macro: request input delimiter is not closed");
  }
  const std::string input = request_text.substr(begin, close - begin);

  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t macro = response_template.find("{{oracle:", pos);
    if (macro == std::string::npos) {
      out += response_template.substr(pos);
      return out;
    }
    out += response_template.substr(pos, macro - pos);
    const std::size_t end = response_template.find("}}", macro);
    const int position = std::stoi(response_template.substr(macro + 9, end - macro - 9));
    out += encode_oracle(input, position);
    pos = end + 2;
  }
}

}  // namespace

std::string_view to_string(AgentRole role) {
  switch (role) {
    case AgentRole::Operational: return "operational";
    case AgentRole::MetaPrompt: return "meta_prompt";
    case AgentRole::Alignment: return "alignment";
    case AgentRole::SearchTerms: return "search_terms";
    case AgentRole::Pruning: return "pruning";
    case AgentRole::ResponseComparison: return "response_comparison";
    case AgentRole::PositiveFeedback: return "positive_feedback";
    case AgentRole::NegativeFeedback: return "negative_feedback";
    case AgentRole::KnowledgeInsight: return "knowledge_insight";
  }
  return "operational";
}

AgentRole role_from_string(std::string_view token) {
  for (AgentRole role : kAllRoles) {
    if (token == role_token(role)) return role;
  }
  throw ParseError("unknown agent role: " + std::string(token));
}

std::string Reasoner::complete(AgentRole role, const std::string& request_text, int attempt) {
  const auto start = std::chrono::steady_clock::now();
  std::string response = do_complete(role, request_text);
  const auto latency =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);

  std::lock_guard<std::mutex> lock(log_mutex_);
  log_.push_back({role, request_text, response, latency, attempt});
  return response;
}

std::vector<ReasonerExchange> Reasoner::exchanges() const {
  std::lock_guard<std::mutex> lock(log_mutex_);
  return log_;
}

std::size_t Reasoner::exchange_count() const {
  std::lock_guard<std::mutex> lock(log_mutex_);
  return log_.size();
}

ScriptedReasoner::ScriptedReasoner(std::vector<ScriptStep> script) : script_(std::move(script)) {
  uses_left_.reserve(script_.size());
  for (const ScriptStep& step : script_) uses_left_.push_back(step.max_uses.value_or(-1));
}

std::string ScriptedReasoner::do_complete(AgentRole role, const std::string& request_text) {
  std::lock_guard<std::mutex> lock(step_mutex_);
  for (std::size_t i = 0; i < script_.size(); ++i) {
    const ScriptStep& step = script_[i];
    if (step.role && *step.role != role) continue;
    if (step.match_substring && request_text.find(*step.match_substring) == std::string::npos)
      continue;
    if (uses_left_[i] == 0) continue;
    if (uses_left_[i] > 0) --uses_left_[i];
    return expand_macros(step.response_template, request_text);
  }
  throw ScriptExhaustedError("scripted backend: no step matches a " +
                             std::string(role_token(role)) + " request (script exhausted)");
}

std::vector<ScriptStep> parse_script(const std::string& content, const std::string& origin_name) {
  std::vector<ScriptStep> script;
  const std::vector<std::string> lines = text::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = origin_name + ":" + std::to_string(i + 1);
    std::string_view line = text::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw ParseError(where + ": invalid step JSON: " + ex.what());
    }
    if (!j.is_object()) throw ParseError(where + ": step must be a JSON object");

    ScriptStep step;
    for (const auto& item : j.items()) {
      const std::string& key = item.key();
      if (key == "role") {
        const std::string token = item.value().get<std::string>();
        if (token != "*") {
          try {
            step.role = role_from_string(token);
          } catch (const ParseError&) {
            throw ParseError(where + ": unknown role token \"" + token + "\"");
          }
        }
      } else if (key == "match") {
        step.match_substring = item.value().get<std::string>();
      } else if (key == "response") {
        step.response_template = item.value().get<std::string>();
      } else if (key == "max_uses") {
        const int uses = item.value().get<int>();
        if (uses < 1) throw ParseError(where + ": max_uses must be positive");
        step.max_uses = uses;
      } else {
        throw ParseError(where + ": unknown key \"" + key + "\"");
      }
    }
    if (!j.contains("role")) throw ParseError(where + ": step is missing \"role\"");
    if (!j.contains("response")) throw ParseError(where + ": step is missing \"response\"");
    validate_macros(step.response_template, where);
    script.push_back(std::move(step));
  }
  return script;
}

std::vector<ScriptStep> load_script(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open script file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_script(buffer.str(), path.filename().string());
}

}  // namespace clu
