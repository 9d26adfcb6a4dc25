#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "clu/checkpoint.hpp"
#include "clu/config.hpp"
#include "clu/crypto_task.hpp"
#include "clu/errors.hpp"
#include "clu/learning_loop.hpp"

namespace {

using namespace clu;

struct CommonFlags {
  std::optional<std::string> config_file;
  std::optional<std::int64_t> seed;
  std::optional<int> shots;
  std::optional<int> rule_pos;
  std::optional<int> iterations;
  std::optional<std::string> scripted;
  std::optional<std::string> checkpoint;
  std::optional<std::string> metrics;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_file, "JSON config file");
  cmd->add_option("--seed", flags.seed, "dataset RNG seed");
  cmd->add_option("--shots", flags.shots, "shot count (1-5)")->check(CLI::Range(1, 5));
  cmd->add_option("--rule-pos", flags.rule_pos, "encoding rule letter position (>=1)");
  cmd->add_option("--iterations", flags.iterations, "learning iterations");
  cmd->add_option("--scripted", flags.scripted, "scripted backend file (JSONL)");
  cmd->add_option("--checkpoint", flags.checkpoint, "checkpoint file path");
  cmd->add_option("--metrics", flags.metrics, "metrics CSV path");
}

RunConfig resolve_config(const CommonFlags& flags) {
  RunConfig config =
      flags.config_file ? load_run_config(*flags.config_file) : default_run_config();
  // Flags win over config-file values.
  if (flags.seed) {
    config.dataset.seed = static_cast<std::uint64_t>(*flags.seed);
    config.session.rng_seed = *flags.seed;
  }
  if (flags.shots) config.dataset.shots = *flags.shots;
  if (flags.rule_pos) config.dataset.rule_position = *flags.rule_pos;
  if (flags.iterations) config.session.max_iterations = *flags.iterations;
  if (flags.scripted) {
    config.scripted = std::filesystem::path(*flags.scripted);
    config.reasoner.reset();
  }
  if (flags.checkpoint) config.checkpoint_path = *flags.checkpoint;
  if (flags.metrics) config.metrics_path = *flags.metrics;
  return config;
}

struct Runtime {
  std::unique_ptr<Reasoner> backend;
  std::unique_ptr<EmbeddingProvider> provider;
  std::unique_ptr<AgentSuite> agents;
  std::unique_ptr<Engine> engine;
};

Runtime make_runtime(const RunConfig& config) {
  Runtime rt;
  rt.backend = make_backend(config);
  rt.provider = make_embedding_provider(config);
  TemplateSet templates = TemplateSet::load(config.template_dir);
  rt.agents =
      std::make_unique<AgentSuite>(*rt.backend, std::move(templates), config.session.goals);
  rt.engine = std::make_unique<Engine>(config.session, *rt.agents, *rt.provider);
  return rt;
}

std::string task_descriptor(const SentenceDataset& dataset) {
  std::string descriptor =
      "Infer the hidden transformation rule that maps a sentence to its code, then apply it to "
      "the given sentence. Worked examples:";
  for (const SentencePair& shot : dataset.shots) {
    descriptor += "\n\"" + shot.sentence + "\" -> \"" + shot.encoded + "\"";
  }
  return descriptor;
}

std::vector<Task> learning_tasks(const SentenceDataset& dataset, int iterations) {
  const std::string descriptor = task_descriptor(dataset);
  std::vector<Task> tasks;
  tasks.reserve(iterations);
  for (int i = 0; i < iterations; ++i) {
    const SentencePair& shot = dataset.shots[i % dataset.shots.size()];
    Task task;
    task.id = "shot-" + std::to_string(i % dataset.shots.size() + 1);
    task.input = shot.sentence;
    task.expected = shot.encoded;
    task.descriptor = descriptor;
    tasks.push_back(std::move(task));
  }
  return tasks;
}

std::vector<Task> test_tasks(const SentenceDataset& dataset) {
  const std::string descriptor = task_descriptor(dataset);
  std::vector<Task> tasks;
  tasks.reserve(dataset.test_pairs.size());
  for (std::size_t i = 0; i < dataset.test_pairs.size(); ++i) {
    Task task;
    task.id = "test-" + std::to_string(i + 1);
    task.input = dataset.test_pairs[i].sentence;
    task.expected = dataset.test_pairs[i].encoded;
    task.descriptor = descriptor;
    tasks.push_back(std::move(task));
  }
  return tasks;
}

void print_accuracy(double accuracy) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.4f", accuracy);
  std::cout << buf << "\n";
}

int cmd_learn(const CommonFlags& flags) {
  RunConfig config = resolve_config(flags);
  config.validate();
  Runtime rt = make_runtime(config);
  const SentenceDataset dataset = obtain_dataset(config);

  const std::vector<Task> tasks = learning_tasks(dataset, config.session.max_iterations);
  const std::vector<Task> eval_set = test_tasks(dataset);

  MetricsWriter metrics(config.metrics_path);
  const auto on_iteration = [&](const IterationRecord& record,
                                const std::optional<double>& eval_accuracy, const Engine& engine) {
    metrics.write_row(record, {engine.state().general.size(), engine.state().prompt.size()},
                      eval_accuracy);
    if (record.pruned) write_checkpoint(engine.state(), config.checkpoint_path);
  };

  SessionReport report = rt.engine->run_session(tasks, &eval_set, on_iteration);
  write_checkpoint(rt.engine->state(), config.checkpoint_path);
  if (config.report_path) write_session_report(report, *config.report_path);

  std::cerr << "learn: " << report.records.size() << " iteration(s), gks="
            << rt.engine->state().general.size() << " pks=" << rt.engine->state().prompt.size()
            << ", checkpoint " << config.checkpoint_path.string() << "\n";
  if (report.aborted) {
    std::cerr << "learn: aborted: " << report.error << "\n";
    return 1;
  }
  return 0;
}

int cmd_eval(const CommonFlags& flags) {
  RunConfig config = resolve_config(flags);
  config.validate();
  Runtime rt = make_runtime(config);
  rt.engine->replace_state(restore_checkpoint(config.checkpoint_path));
  const SentenceDataset dataset = obtain_dataset(config);
  print_accuracy(rt.engine->evaluate_accuracy(test_tasks(dataset)));
  return 0;
}

int cmd_probe(const CommonFlags& flags) {
  RunConfig config = resolve_config(flags);
  config.validate();
  Runtime rt = make_runtime(config);
  rt.engine->replace_state(restore_checkpoint(config.checkpoint_path));
  std::cout << probe_rule(*rt.engine) << "\n";
  return 0;
}

int cmd_baseline(const CommonFlags& flags, const std::string& mode) {
  RunConfig config = resolve_config(flags);
  config.validate();
  std::unique_ptr<Reasoner> backend = make_backend(config);
  const SentenceDataset dataset = obtain_dataset(config);
  print_accuracy(run_baseline(dataset, baseline_mode_from_string(mode), *backend));
  return 0;
}

int cmd_inspect(const std::string& checkpoint_path, bool full) {
  const KnowledgeState state = restore_checkpoint(checkpoint_path);
  std::cout << "general: " << state.general.size() << ", prompt: " << state.prompt.size() << "\n";
  if (full) {
    for (const KnowledgeSpace* space : {&state.general, &state.prompt}) {
      for (const auto& [id, entry] : space->entries()) {
        std::cout << to_string(space->kind()) << " #" << id << " [" << to_string(entry.origin)
                  << ", iteration " << entry.created_iteration << "] " << entry.aligned_text;
        if (!entry.tags.empty()) {
          std::cout << " (tags:";
          for (const std::string& tag : entry.tags) std::cout << " " << tag;
          std::cout << ")";
        }
        std::cout << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite Learning Unit: feedback-driven knowledge refinement engine"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string baseline_mode = "io";
  std::string inspect_path;
  bool inspect_full = false;

  CLI::App* learn = app.add_subcommand("learn", "run a learning session over the n-shot examples");
  add_common_flags(learn, flags);

  CLI::App* eval = app.add_subcommand("eval", "evaluate checkpoint accuracy on the test pairs");
  add_common_flags(eval, flags);

  CLI::App* probe = app.add_subcommand("probe", "ask for the learned rule hypothesis");
  add_common_flags(probe, flags);

  CLI::App* baseline = app.add_subcommand("baseline", "run the IO or CoT baseline");
  add_common_flags(baseline, flags);
  baseline->add_option("--mode", baseline_mode, "io or cot")
      ->check(CLI::IsMember({"io", "cot"}));

  CLI::App* inspect = app.add_subcommand("inspect", "summarize a checkpoint");
  inspect->add_option("--checkpoint", inspect_path, "checkpoint file")->required();
  inspect->add_flag("--full", inspect_full, "print full entries");

  CLI11_PARSE(app, argc, argv);

  try {
    if (learn->parsed()) return cmd_learn(flags);
    if (eval->parsed()) return cmd_eval(flags);
    if (probe->parsed()) return cmd_probe(flags);
    if (baseline->parsed()) return cmd_baseline(flags, baseline_mode);
    if (inspect->parsed()) return cmd_inspect(inspect_path, inspect_full);
  } catch (const clu::Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "unexpected error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
