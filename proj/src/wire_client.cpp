#include "wire_client.hpp"

#include <thread>

#include <httplib.h>

#include "clu/errors.hpp"

namespace clu::wire {

Target split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("not an absolute URL: " + url);
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw ConfigError("unsupported URL scheme: " + url);
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  if (path_start == scheme_end + 3) throw ConfigError("URL has no host: " + url);
  return {url.substr(0, path_start), url.substr(path_start)};
}

namespace {

bool transient_status(int status) { return status == 429 || (status >= 500 && status < 600); }

}  // namespace

std::string post_json(const std::string& url, const std::string& payload,
                      const PostOptions& options) {
  const Target target = split_url(url);

  httplib::Client client(target.base);
  const auto timeout_s = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  client.set_connection_timeout(options.timeout.count() / 1000,
                                (options.timeout.count() % 1000) * 1000);
  client.set_read_timeout(timeout_s.count(), (options.timeout.count() % 1000) * 1000);
  client.set_write_timeout(timeout_s.count(), (options.timeout.count() % 1000) * 1000);

  httplib::Headers headers;
  if (!options.bearer_token.empty()) {
    headers.emplace("Authorization", "Bearer " + options.bearer_token);
  }

  std::chrono::milliseconds backoff{500};
  int last_status = 0;
  std::string last_error;

  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }

    httplib::Result result = client.Post(target.path, headers, payload, "application/json");
    if (!result) {
      last_status = 0;
      last_error = httplib::to_string(result.error());
      continue;  // transport failure (includes timeouts): transient
    }

    const int status = result->status;
    if (status >= 200 && status < 300) return result->body;

    if (!transient_status(status)) {
      throw BackendError("backend returned HTTP " + std::to_string(status) + " for " + url, status);
    }
    last_status = status;
    last_error = "HTTP " + std::to_string(status);
  }

  throw BackendError("backend unreachable after " + std::to_string(options.max_retries + 1) +
                         " attempts (" + (last_error.empty() ? "no response" : last_error) +
                         ") for " + url,
                     last_status);
}

}  // namespace clu::wire
