#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clu/agents.hpp"
#include "clu/checkpoint.hpp"
#include "clu/knowledge_store.hpp"

namespace clu {

struct Task {
  std::string id;
  std::string input;                   // x
  std::optional<std::string> expected; // y*, present in supervised mode
  std::string descriptor;              // t, human-readable task statement
};

enum class SessionMode { learning, reasoning };

struct SessionConfig {
  SessionMode mode = SessionMode::learning;
  GoalSet goals;
  int prune_interval = 5;
  std::size_t retrieval_n = 5;
  int max_iterations = 20;
  std::int64_t rng_seed = 0;  // reserved; the loop itself draws no randomness
  int eval_every = 5;         // 0 disables periodic evaluation
  bool prune_full_store = false;
  std::size_t embedding_dim = kDefaultEmbeddingDim;

  void validate() const;
};

enum class IterationVerdict { success, failure, none };

std::string_view to_string(IterationVerdict verdict);

/// Full audit of one loop pass.
struct IterationRecord {
  int iteration = 0;
  std::string task_id;
  std::vector<std::string> retrieved_general;
  std::vector<std::string> retrieved_prompt;
  std::string prompt;
  std::string output;
  IterationVerdict verdict = IterationVerdict::none;
  std::optional<std::string> feedback;
  std::vector<std::string> new_entry_ids;
  bool pruned = false;
};

struct EvalPoint {
  int iteration = 0;
  double accuracy = 0.0;
};

struct StoreSizes {
  std::size_t general = 0;
  std::size_t prompt = 0;
};

struct SessionReport {
  std::vector<IterationRecord> records;
  std::vector<StoreSizes> store_sizes;  // aligned with records
  std::vector<EvalPoint> eval_points;
  bool aborted = false;
  std::string error;
};

/// Algorithm-2 orchestration over one pair of knowledge spaces.
///
/// The learning loop is strictly serial. Reasoning-phase calls never write:
/// run_reasoning and evaluate_accuracy are const and leave the checkpoint
/// byte-identical.
class Engine {
 public:
  Engine(SessionConfig config, AgentSuite& agents, EmbeddingProvider& provider);

  const SessionConfig& config() const { return config_; }
  KnowledgeState& state() { return state_; }
  const KnowledgeState& state() const { return state_; }
  const std::vector<std::string>& feedback_history() const { return feedback_history_; }
  int iterations_completed() const { return iterations_completed_; }

  /// Adopts a restored state; clears the feedback history and resumes
  /// iteration numbering after the newest stored entry.
  void replace_state(KnowledgeState state);

  /// Stores seed knowledge verbatim (origin = seed).
  std::string seed_knowledge(SpaceKind kind, std::string_view text);

  /// One full learning pass: retrieve, prompt, execute, compare, feedback,
  /// insights, periodic prune. Any agent/backend error rolls both spaces
  /// (and the feedback history) back to their pre-iteration snapshots and
  /// rethrows.
  IterationRecord run_learning_iteration(const Task& task);

  /// Pure execution: same retrieval/prompt/execute path, no state change.
  std::string run_reasoning(const Task& task) const;

  /// Exact-match accuracy of run_reasoning over the test tasks (all of
  /// which must carry expected outputs). State unchanged.
  double evaluate_accuracy(const std::vector<Task>& test_tasks) const;

  using IterationCallback = std::function<void(
      const IterationRecord&, const std::optional<double>& eval_accuracy, const Engine&)>;

  /// Runs the configured mode over `tasks` in order. In learning mode, when
  /// `eval_tasks` is given and eval_every > 0, accuracy is measured after
  /// every eval_every-th iteration. Fails fast on the first unrecoverable
  /// error; the report of completed iterations is still returned.
  SessionReport run_session(const std::vector<Task>& tasks,
                            const std::vector<Task>* eval_tasks = nullptr,
                            const IterationCallback& on_iteration = {});

 private:
  std::vector<std::string> texts_for(const KnowledgeSpace& space,
                                     const std::vector<RetrievalResult>& results) const;
  std::vector<std::string>& since_prune(SpaceKind kind);
  void prune_space(SpaceKind kind, int iteration, IterationRecord& record);

  SessionConfig config_;
  AgentSuite& agents_;
  EmbeddingProvider& provider_;
  KnowledgeState state_;
  std::vector<std::string> feedback_history_;
  std::vector<std::string> since_prune_general_;
  std::vector<std::string> since_prune_prompt_;
  int iterations_completed_ = 0;
};

/// Streams the per-iteration metrics rows:
/// iteration,task_id,verdict,gks_size,pks_size,pruned,eval_accuracy.
class MetricsWriter {
 public:
  explicit MetricsWriter(const std::filesystem::path& path);
  void write_row(const IterationRecord& record, StoreSizes sizes,
                 const std::optional<double>& eval_accuracy);

 private:
  std::filesystem::path path_;
};

std::string session_report_to_json(const SessionReport& report);
void write_session_report(const SessionReport& report, const std::filesystem::path& path);

}  // namespace clu
