#include <cstdlib>

#include <nlohmann/json.hpp>

#include "clu/errors.hpp"
#include "clu/reasoner.hpp"
#include "wire_client.hpp"

namespace clu {

namespace {

using nlohmann::json;

std::string env_or_empty(const char* name) {
  const char* value = std::getenv(name);
  return value ? std::string(value) : std::string();
}

}  // namespace

HttpReasoner::HttpReasoner(ReasonerConfig config) : config_(std::move(config)) {
  const std::string base_override = env_or_empty("CLU_API_BASE");
  if (!base_override.empty()) {
    std::string base = base_override;
    while (!base.empty() && base.back() == '/') base.pop_back();
    config_.endpoint_url = base + "/chat/completions";
  }
  wire::split_url(config_.endpoint_url);  // validates well-formedness up front
  api_key_ = env_or_empty(config_.api_key_env.c_str());
}

std::string HttpReasoner::do_complete(AgentRole, const std::string& request_text) {
  json body;
  body["model"] = config_.model_name;
  body["messages"] = json::array({json{{"role", "user"}, {"content", request_text}}});
  body["temperature"] = config_.temperature;
  body["max_tokens"] = config_.max_output_tokens;

  wire::PostOptions options;
  options.timeout = config_.request_timeout;
  options.max_retries = config_.max_retries;
  options.bearer_token = api_key_;

  const std::string response_body = wire::post_json(config_.endpoint_url, body.dump(), options);
  try {
    const json response = json::parse(response_body);
    return response.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& ex) {
    throw BackendError(std::string("malformed chat-completions response: ") + ex.what());
  }
}

}  // namespace clu
