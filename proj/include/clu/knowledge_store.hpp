#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clu/embedding.hpp"

namespace clu {

/// The three goal texts steering alignment, search, and pruning.
struct GoalSet {
  std::string main_goal;
  std::string retrieval_goal;
  std::string storage_goal;

  /// Throws InvalidInputError unless all three are non-empty after trimming.
  void validate() const;

  bool operator==(const GoalSet&) const = default;
};

enum class SpaceKind { general, prompt };
enum class EntryOrigin { seed, insight, prune_rewrite };

std::string_view to_string(SpaceKind kind);
std::string_view to_string(EntryOrigin origin);
SpaceKind space_kind_from_string(std::string_view s);
EntryOrigin origin_from_string(std::string_view s);

/// One aligned, tagged, embedded knowledge item.
struct KnowledgeEntry {
  std::string id;
  std::string aligned_text;
  std::vector<std::string> tags;
  std::vector<float> embedding;  // unit L2 norm, dimension = space dim
  SpaceKind space_kind = SpaceKind::general;
  int created_iteration = 0;
  EntryOrigin origin = EntryOrigin::insight;
};

struct RetrievalResult {
  std::string entry_id;
  float score = 0.0f;  // in [-1, 1]
  int rank = 0;        // 1-based, no gaps
};

/// Numeric order for decimal-string ids ("2" < "10").
struct IdLess {
  bool operator()(const std::string& a, const std::string& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Output of an alignment function: the storable text plus tags.
struct AlignedText {
  std::string text;
  std::vector<std::string> tags;
};

using AlignerFn = std::function<AlignedText(std::string_view raw, const GoalSet& goals)>;
using TermGeneratorFn =
    std::function<std::vector<std::string>(std::string_view query, const GoalSet& goals)>;
using PrunerFn = std::function<std::vector<std::string>(
    const std::vector<std::string>& feedback_batch, const std::vector<std::string>& existing_texts,
    const GoalSet& goals)>;

/// An identity aligner: stores the text verbatim with no tags. Used for
/// prune rewrites and test seeding.
AlignedText identity_alignment(std::string_view raw, const GoalSet& goals);

/// One goal-aligned knowledge space with a brute-force cosine index.
///
/// Value type: copying a space snapshots it (entries plus id counter), which
/// is what iteration rollback relies on. All read paths are const; the engine
/// serializes writers, so concurrent const queries are safe.
class KnowledgeSpace {
 public:
  KnowledgeSpace(SpaceKind kind, GoalSet goals, std::size_t embedding_dim = kDefaultEmbeddingDim);

  SpaceKind kind() const { return kind_; }
  const GoalSet& goals() const { return goals_; }
  std::size_t embedding_dim() const { return embedding_dim_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(const std::string& id) const { return entries_.count(id) > 0; }

  /// Throws InvalidInputError for an unknown id.
  const KnowledgeEntry& entry(const std::string& id) const;

  /// Entries in ascending id order.
  const std::map<std::string, KnowledgeEntry, IdLess>& entries() const { return entries_; }

  /// Aligns `raw` through `aligner`, embeds the aligned text, and stores a
  /// fresh entry. Returns the new id. No deduplication: equal raw texts get
  /// distinct entries. Throws AlignmentError when the aligner yields empty
  /// text (nothing is stored).
  std::string save_knowledge(EmbeddingProvider& provider, std::string_view raw,
                             const AlignerFn& aligner, int iteration,
                             EntryOrigin origin = EntryOrigin::insight);

  /// Top-min(n, size) entries by cosine score against the embedded
  /// combination of the generated search terms. Sorted by score descending,
  /// ties broken by ascending id; ranks are 1..k. An empty store yields an
  /// empty list. Never mutates the store.
  std::vector<RetrievalResult> retrieve_knowledge(EmbeddingProvider& provider,
                                                  std::string_view query, std::size_t n,
                                                  const TermGeneratorFn& term_generator) const;

  /// Deletes every entry in `ids` and stores the pruner's replacement texts
  /// as fresh prune_rewrite entries (identity alignment). Returns the new
  /// ids. Atomic: an unknown id, a pruner failure, or an empty replacement
  /// text leaves the store unchanged.
  std::vector<std::string> prune_knowledge(EmbeddingProvider& provider,
                                           const std::vector<std::string>& feedback_batch,
                                           const std::vector<std::string>& ids,
                                           const PrunerFn& pruner, int iteration);

  /// Restore path: inserts a fully formed entry, keeping the id counter and
  /// iteration watermark ahead of it. Throws on duplicate id, kind mismatch,
  /// or dimension mismatch.
  void insert_restored(KnowledgeEntry entry);

 private:
  std::string next_id();

  SpaceKind kind_;
  GoalSet goals_;
  std::size_t embedding_dim_;
  std::map<std::string, KnowledgeEntry, IdLess> entries_;
  std::uint64_t next_id_value_ = 1;
  int last_created_iteration_ = 0;
};

}  // namespace clu
