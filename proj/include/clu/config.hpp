#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "clu/crypto_task.hpp"
#include "clu/embedding.hpp"
#include "clu/learning_loop.hpp"
#include "clu/reasoner.hpp"

namespace clu {

/// Where the crypto dataset comes from: an existing file, or generation
/// parameters.
struct DatasetSpec {
  std::optional<std::filesystem::path> path;
  int shots = 1;
  int rule_position = 2;
  std::uint64_t seed = 42;
};

/// Everything a CLI command needs. Loaded from one JSON config file; flags
/// override fields afterwards (flags win).
struct RunConfig {
  SessionConfig session;
  std::optional<ReasonerConfig> reasoner;             // live backend
  std::optional<std::filesystem::path> scripted;      // scripted backend
  std::optional<RemoteEmbedderConfig> remote_embedding;
  DatasetSpec dataset;
  std::filesystem::path template_dir = "assets/templates";
  std::filesystem::path checkpoint_path = "clu_checkpoint.json";
  std::filesystem::path metrics_path = "clu_metrics.csv";
  std::optional<std::filesystem::path> report_path;

  /// Exactly one backend must be selected.
  void validate() const;
};

GoalSet default_goals();

RunConfig default_run_config();

/// Strict parse: unknown keys are errors.
RunConfig load_run_config(const std::filesystem::path& config_file);

std::unique_ptr<Reasoner> make_backend(const RunConfig& config);
std::unique_ptr<EmbeddingProvider> make_embedding_provider(const RunConfig& config);

SentenceDataset obtain_dataset(const RunConfig& config);

}  // namespace clu
