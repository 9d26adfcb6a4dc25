#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "clu/knowledge_store.hpp"

namespace clu {

inline constexpr int kCheckpointSchemaVersion = 1;

/// Both knowledge spaces of one CLU. The spaces share a GoalSet.
struct KnowledgeState {
  KnowledgeSpace general;
  KnowledgeSpace prompt;

  KnowledgeState(GoalSet goals, std::size_t embedding_dim = kDefaultEmbeddingDim)
      : general(SpaceKind::general, goals, embedding_dim),
        prompt(SpaceKind::prompt, std::move(goals), embedding_dim) {}

  KnowledgeSpace& space(SpaceKind kind) { return kind == SpaceKind::general ? general : prompt; }
  const KnowledgeSpace& space(SpaceKind kind) const {
    return kind == SpaceKind::general ? general : prompt;
  }
};

/// Canonical serialization: fixed key order, entries sorted by id, embedding
/// components printed with 9 significant digits (lossless for float). Equal
/// states serialize to equal bytes.
std::string checkpoint_to_string(const KnowledgeState& state);

KnowledgeState restore_checkpoint_from_string(const std::string& payload);

/// Atomic write: a temp file in the target directory, then rename.
void write_checkpoint(const KnowledgeState& state, const std::filesystem::path& path);

/// Throws SchemaVersionError on a version mismatch and ParseError on
/// malformed content.
KnowledgeState restore_checkpoint(const std::filesystem::path& path);

/// FNV-1a over the canonical serialization; the purity checks compare this.
std::uint64_t state_digest(const KnowledgeState& state);

}  // namespace clu
