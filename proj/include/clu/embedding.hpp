#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace clu {

inline constexpr std::size_t kDefaultEmbeddingDim = 256;

/// Deterministic default embedding: bag of lowercase character 3-grams,
/// feature-hashed (FNV-1a 64) into `dim` buckets, then L2-normalized.
/// Texts shorter than three characters contribute the whole text as one gram.
/// Throws InvalidInputError when `text` is empty after trimming.
std::vector<float> compute_embedding(std::string_view text, std::size_t dim = kDefaultEmbeddingDim);

/// Dot product of two unit vectors, clamped to [-1, 1].
/// Throws InvalidInputError on dimension mismatch.
float cosine_similarity(const std::vector<float>& a, const std::vector<float>& b);

/// Pluggable embedding source. Implementations must be deterministic for
/// equal input and must return unit-norm vectors of dimension dim().
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<float> embed(std::string_view text) = 0;
  virtual std::size_t dim() const = 0;
};

/// The offline default provider (wraps compute_embedding).
class HashedTrigramEmbedder final : public EmbeddingProvider {
 public:
  explicit HashedTrigramEmbedder(std::size_t dim = kDefaultEmbeddingDim) : dim_(dim) {}
  std::vector<float> embed(std::string_view text) override { return compute_embedding(text, dim_); }
  std::size_t dim() const override { return dim_; }

 private:
  std::size_t dim_;
};

struct RemoteEmbedderConfig {
  std::string endpoint_url;   // full URL of the embeddings endpoint
  std::string model_name;
  std::size_t dim = kDefaultEmbeddingDim;
  int request_timeout_ms = 30000;
  int max_retries = 3;
  std::string api_key_env = "CLU_API_KEY";
};

/// Live option: POSTs {model, input} to an embeddings endpoint and
/// L2-normalizes the returned vector. Throws BackendError once retries are
/// exhausted.
class RemoteEmbedder final : public EmbeddingProvider {
 public:
  explicit RemoteEmbedder(RemoteEmbedderConfig config);
  std::vector<float> embed(std::string_view text) override;
  std::size_t dim() const override { return config_.dim; }

 private:
  RemoteEmbedderConfig config_;
};

}  // namespace clu
