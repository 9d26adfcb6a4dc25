#include "clu/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "clu/errors.hpp"
#include "clu/text.hpp"

namespace clu {

std::vector<float> compute_embedding(std::string_view text, std::size_t dim) {
  std::string_view trimmed = text::trim(text);
  if (trimmed.empty()) throw InvalidInputError("compute_embedding: text is empty");
  if (dim == 0) throw InvalidInputError("compute_embedding: dimension must be positive");

  const std::string lowered = text::to_lower(trimmed);
  std::vector<float> vec(dim, 0.0f);
  if (lowered.size() < 3) {
    vec[text::fnv1a64(lowered) % dim] += 1.0f;
  } else {
    for (std::size_t i = 0; i + 3 <= lowered.size(); ++i) {
      vec[text::fnv1a64(std::string_view(lowered).substr(i, 3)) % dim] += 1.0f;
    }
  }

  double norm_sq = 0.0;
  for (float v : vec) norm_sq += static_cast<double>(v) * v;
  const float inv_norm = static_cast<float>(1.0 / std::sqrt(norm_sq));
  for (float& v : vec) v *= inv_norm;
  return vec;
}

float cosine_similarity(const std::vector<float>& a, const std::vector<float>& b) {
  if (a.size() != b.size()) {
    throw InvalidInputError("cosine_similarity: dimension mismatch (" + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()) + ")");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += static_cast<double>(a[i]) * b[i];
  return std::clamp(static_cast<float>(dot), -1.0f, 1.0f);
}

}  // namespace clu
