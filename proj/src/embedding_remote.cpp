#include <cmath>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "clu/embedding.hpp"
#include "clu/errors.hpp"
#include "clu/text.hpp"
#include "wire_client.hpp"

namespace clu {

namespace {
using nlohmann::json;
}

RemoteEmbedder::RemoteEmbedder(RemoteEmbedderConfig config) : config_(std::move(config)) {
  wire::split_url(config_.endpoint_url);
}

std::vector<float> RemoteEmbedder::embed(std::string_view input) {
  if (text::trim(input).empty()) throw InvalidInputError("RemoteEmbedder: text is empty");

  json body;
  body["model"] = config_.model_name;
  body["input"] = std::string(input);

  wire::PostOptions options;
  options.timeout = std::chrono::milliseconds(config_.request_timeout_ms);
  options.max_retries = config_.max_retries;
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key) options.bearer_token = key;

  const std::string response_body = wire::post_json(config_.endpoint_url, body.dump(), options);

  std::vector<float> vec;
  try {
    const json response = json::parse(response_body);
    const json& values = response.at("data").at(0).at("embedding");
    vec.reserve(values.size());
    for (const auto& v : values) vec.push_back(static_cast<float>(v.get<double>()));
  } catch (const json::exception& ex) {
    throw BackendError(std::string("malformed embedding response: ") + ex.what());
  }
  if (vec.size() != config_.dim) {
    throw BackendError("embedding endpoint returned dimension " + std::to_string(vec.size()) +
                       ", expected " + std::to_string(config_.dim));
  }

  double norm_sq = 0.0;
  for (float v : vec) norm_sq += static_cast<double>(v) * v;
  if (norm_sq <= 0.0) throw BackendError("embedding endpoint returned a zero vector");
  const float inv_norm = static_cast<float>(1.0 / std::sqrt(norm_sq));
  for (float& v : vec) v *= inv_norm;
  return vec;
}

}  // namespace clu
