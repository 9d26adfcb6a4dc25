#pragma once

// Internal helper shared by the live chat client and the remote embedder:
// one JSON POST with exponential backoff on timeouts/429/5xx.

#include <chrono>
#include <string>

namespace clu::wire {

struct Target {
  std::string base;  // scheme://host[:port]
  std::string path;  // /chat/completions etc.
};

/// Splits a full URL; throws ConfigError when it is not an absolute
/// http(s) URL.
Target split_url(const std::string& url);

struct PostOptions {
  std::chrono::milliseconds timeout{30000};
  int max_retries = 3;
  std::string bearer_token;  // empty = no Authorization header
};

/// POSTs `payload` as application/json and returns the response body of the
/// first 2xx reply. Retries (500 ms backoff, doubling) only on transport
/// failures, 429, and 5xx; any other status raises BackendError immediately,
/// carrying the status.
std::string post_json(const std::string& url, const std::string& payload,
                      const PostOptions& options);

}  // namespace clu::wire
