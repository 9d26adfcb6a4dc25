#include "clu/knowledge_store.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "clu/errors.hpp"
#include "clu/text.hpp"

namespace clu {

void GoalSet::validate() const {
  if (text::trim(main_goal).empty()) throw InvalidInputError("GoalSet: main goal is empty");
  if (text::trim(retrieval_goal).empty()) throw InvalidInputError("GoalSet: retrieval goal is empty");
  if (text::trim(storage_goal).empty()) throw InvalidInputError("GoalSet: storage goal is empty");
}

std::string_view to_string(SpaceKind kind) {
  return kind == SpaceKind::general ? "general" : "prompt";
}

std::string_view to_string(EntryOrigin origin) {
  switch (origin) {
    case EntryOrigin::seed: return "seed";
    case EntryOrigin::insight: return "insight";
    case EntryOrigin::prune_rewrite: return "prune_rewrite";
  }
  return "insight";
}

SpaceKind space_kind_from_string(std::string_view s) {
  if (s == "general") return SpaceKind::general;
  if (s == "prompt") return SpaceKind::prompt;
  throw ParseError("unknown space kind: " + std::string(s));
}

EntryOrigin origin_from_string(std::string_view s) {
  if (s == "seed") return EntryOrigin::seed;
  if (s == "insight") return EntryOrigin::insight;
  if (s == "prune_rewrite") return EntryOrigin::prune_rewrite;
  throw ParseError("unknown entry origin: " + std::string(s));
}

AlignedText identity_alignment(std::string_view raw, const GoalSet&) {
  return AlignedText{std::string(raw), {}};
}

KnowledgeSpace::KnowledgeSpace(SpaceKind kind, GoalSet goals, std::size_t embedding_dim)
    : kind_(kind), goals_(std::move(goals)), embedding_dim_(embedding_dim) {
  goals_.validate();
  if (embedding_dim_ == 0) throw InvalidInputError("KnowledgeSpace: embedding_dim must be positive");
}

const KnowledgeEntry& KnowledgeSpace::entry(const std::string& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw InvalidInputError("unknown entry id: " + id);
  return it->second;
}

std::string KnowledgeSpace::next_id() { return std::to_string(next_id_value_++); }

std::string KnowledgeSpace::save_knowledge(EmbeddingProvider& provider, std::string_view raw,
                                           const AlignerFn& aligner, int iteration,
                                           EntryOrigin origin) {
  if (text::trim(raw).empty()) throw InvalidInputError("save_knowledge: raw text is empty");
  if (iteration < 0) throw InvalidInputError("save_knowledge: iteration must be non-negative");
  if (iteration < last_created_iteration_) {
    throw InvalidInputError("save_knowledge: created_iteration must be non-decreasing");
  }

  AlignedText aligned = aligner(raw, goals_);
  if (text::trim(aligned.text).empty()) {
    throw AlignmentError("save_knowledge: aligner produced empty text");
  }

  KnowledgeEntry entry;
  entry.id = next_id();
  entry.aligned_text = std::move(aligned.text);
  entry.tags = std::move(aligned.tags);
  entry.embedding = provider.embed(entry.aligned_text);
  entry.space_kind = kind_;
  entry.created_iteration = iteration;
  entry.origin = origin;

  last_created_iteration_ = iteration;
  std::string id = entry.id;
  entries_.emplace(id, std::move(entry));
  return id;
}

std::vector<RetrievalResult> KnowledgeSpace::retrieve_knowledge(
    EmbeddingProvider& provider, std::string_view query, std::size_t n,
    const TermGeneratorFn& term_generator) const {
  if (n == 0) throw InvalidInputError("retrieve_knowledge: n must be >= 1");
  if (entries_.empty()) return {};

  std::vector<std::string> terms = term_generator(query, goals_);
  const std::string combined = text::join(terms, " ");
  const std::vector<float> query_embedding = provider.embed(combined);

  std::vector<RetrievalResult> scored;
  scored.reserve(entries_.size());
  for (const auto& [id, entry] : entries_) {
    scored.push_back({id, cosine_similarity(query_embedding, entry.embedding), 0});
  }
  // Ties by ascending id: entries_ iterates in id order, so stable_sort keeps it.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const RetrievalResult& a, const RetrievalResult& b) { return a.score > b.score; });

  if (scored.size() > n) scored.resize(n);
  for (std::size_t i = 0; i < scored.size(); ++i) scored[i].rank = static_cast<int>(i + 1);
  return scored;
}

std::vector<std::string> KnowledgeSpace::prune_knowledge(EmbeddingProvider& provider,
                                                         const std::vector<std::string>& feedback_batch,
                                                         const std::vector<std::string>& ids,
                                                         const PrunerFn& pruner, int iteration) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!entries_.count(id)) throw InvalidInputError("prune_knowledge: unknown entry id: " + id);
    if (!seen.insert(id).second) throw InvalidInputError("prune_knowledge: duplicate entry id: " + id);
  }

  std::vector<std::string> existing_texts;
  existing_texts.reserve(ids.size());
  for (const auto& id : ids) existing_texts.push_back(entries_.at(id).aligned_text);

  // Everything that can fail happens before the first mutation.
  std::vector<std::string> replacements = pruner(feedback_batch, existing_texts, goals_);
  for (const auto& replacement : replacements) {
    if (text::trim(replacement).empty()) {
      throw PruningError("prune_knowledge: pruner produced an empty replacement text");
    }
  }

  for (const auto& id : ids) entries_.erase(id);

  std::vector<std::string> new_ids;
  new_ids.reserve(replacements.size());
  for (const auto& replacement : replacements) {
    new_ids.push_back(save_knowledge(provider, replacement, identity_alignment, iteration,
                                     EntryOrigin::prune_rewrite));
  }
  return new_ids;
}

void KnowledgeSpace::insert_restored(KnowledgeEntry entry) {
  if (entry.space_kind != kind_) throw ParseError("restored entry has mismatched space_kind");
  if (entry.embedding.size() != embedding_dim_) {
    throw ParseError("restored entry has embedding of dimension " +
                     std::to_string(entry.embedding.size()) + ", expected " +
                     std::to_string(embedding_dim_));
  }
  if (entries_.count(entry.id)) throw ParseError("duplicate entry id in checkpoint: " + entry.id);

  char* end = nullptr;
  const std::uint64_t numeric = std::strtoull(entry.id.c_str(), &end, 10);
  if (end == entry.id.c_str() || *end != '\0') {
    throw ParseError("entry id is not a decimal integer: " + entry.id);
  }
  next_id_value_ = std::max(next_id_value_, numeric + 1);
  last_created_iteration_ = std::max(last_created_iteration_, entry.created_iteration);

  std::string id = entry.id;
  entries_.emplace(std::move(id), std::move(entry));
}

}  // namespace clu
