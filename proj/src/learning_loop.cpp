#include "clu/learning_loop.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "clu/errors.hpp"
#include "clu/text.hpp"

namespace clu {

namespace {

using nlohmann::json;

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void SessionConfig::validate() const {
  goals.validate();
  if (prune_interval < 1) throw InvalidInputError("SessionConfig: prune_interval must be >= 1");
  if (retrieval_n < 1) throw InvalidInputError("SessionConfig: retrieval_n must be >= 1");
  if (max_iterations < 1) throw InvalidInputError("SessionConfig: max_iterations must be >= 1");
  if (eval_every < 0) throw InvalidInputError("SessionConfig: eval_every must be >= 0");
  if (embedding_dim == 0) throw InvalidInputError("SessionConfig: embedding_dim must be positive");
}

std::string_view to_string(IterationVerdict verdict) {
  switch (verdict) {
    case IterationVerdict::success: return "success";
    case IterationVerdict::failure: return "failure";
    case IterationVerdict::none: return "none";
  }
  return "none";
}

Engine::Engine(SessionConfig config, AgentSuite& agents, EmbeddingProvider& provider)
    : config_(std::move(config)), agents_(agents), provider_(provider),
      state_(config_.goals, config_.embedding_dim) {
  config_.validate();
  if (provider_.dim() != config_.embedding_dim) {
    throw InvalidInputError("Engine: embedding provider dimension " +
                            std::to_string(provider_.dim()) + " does not match configured " +
                            std::to_string(config_.embedding_dim));
  }
}

void Engine::replace_state(KnowledgeState state) {
  if (state.general.embedding_dim() != provider_.dim()) {
    throw InvalidInputError("replace_state: checkpoint dimension " +
                            std::to_string(state.general.embedding_dim()) +
                            " does not match the embedding provider");
  }
  state_ = std::move(state);
  feedback_history_.clear();
  since_prune_general_.clear();
  since_prune_prompt_.clear();
  int newest = 0;
  for (const KnowledgeSpace* space : {&state_.general, &state_.prompt}) {
    for (const auto& [id, entry] : space->entries()) {
      newest = std::max(newest, entry.created_iteration);
    }
  }
  iterations_completed_ = newest;
}

std::string Engine::seed_knowledge(SpaceKind kind, std::string_view text) {
  std::string id = state_.space(kind).save_knowledge(provider_, text, identity_alignment,
                                                     iterations_completed_, EntryOrigin::seed);
  since_prune(kind).push_back(id);
  return id;
}

std::vector<std::string> Engine::texts_for(const KnowledgeSpace& space,
                                           const std::vector<RetrievalResult>& results) const {
  std::vector<std::string> texts;
  texts.reserve(results.size());
  for (const RetrievalResult& result : results) {
    texts.push_back(space.entry(result.entry_id).aligned_text);
  }
  return texts;
}

std::vector<std::string>& Engine::since_prune(SpaceKind kind) {
  return kind == SpaceKind::general ? since_prune_general_ : since_prune_prompt_;
}

void Engine::prune_space(SpaceKind kind, int iteration, IterationRecord& record) {
  KnowledgeSpace& space = state_.space(kind);
  std::vector<std::string> scope;
  if (config_.prune_full_store) {
    for (const auto& [id, entry] : space.entries()) scope.push_back(id);
  } else {
    scope = since_prune(kind);
  }
  if (!scope.empty()) {
    std::vector<std::string> new_ids =
        space.prune_knowledge(provider_, feedback_history_, scope, agents_.pruner(), iteration);
    record.new_entry_ids.insert(record.new_entry_ids.end(), new_ids.begin(), new_ids.end());
  }
  since_prune(kind).clear();
}

IterationRecord Engine::run_learning_iteration(const Task& task) {
  if (config_.mode != SessionMode::learning) {
    throw InvalidInputError("run_learning_iteration: session mode is not learning");
  }
  if (text::trim(task.input).empty()) {
    throw InvalidInputError("run_learning_iteration: task input is empty");
  }

  // Pre-iteration snapshot; on any failure the iteration never happened.
  const KnowledgeState snapshot_state = state_;
  const std::vector<std::string> snapshot_history = feedback_history_;
  const std::vector<std::string> snapshot_since_general = since_prune_general_;
  const std::vector<std::string> snapshot_since_prompt = since_prune_prompt_;

  const int iteration = iterations_completed_ + 1;
  try {
    IterationRecord record;
    record.iteration = iteration;
    record.task_id = task.id;

    const auto general_hits = state_.general.retrieve_knowledge(
        provider_, task.descriptor, config_.retrieval_n, agents_.term_generator());
    const auto prompt_hits = state_.prompt.retrieve_knowledge(
        provider_, task.descriptor, config_.retrieval_n, agents_.term_generator());
    for (const auto& hit : general_hits) record.retrieved_general.push_back(hit.entry_id);
    for (const auto& hit : prompt_hits) record.retrieved_prompt.push_back(hit.entry_id);

    const std::vector<std::string> general_texts = texts_for(state_.general, general_hits);
    const std::vector<std::string> prompt_texts = texts_for(state_.prompt, prompt_hits);

    record.prompt = agents_.generate_prompt(task.descriptor, prompt_texts);
    record.output = agents_.execute_operational(task.input, general_texts, record.prompt);

    const ComparisonMode mode =
        task.expected ? ComparisonMode::deterministic : ComparisonMode::judged;
    const ComparisonResult comparison =
        agents_.compare_response(record.output, task.expected, task.descriptor, mode);
    record.verdict = comparison.ok() ? IterationVerdict::success : IterationVerdict::failure;

    const std::string feedback_text =
        agents_.feedback(comparison, record.output, task.descriptor);
    record.feedback = feedback_text;

    const std::vector<InsightItem> insights =
        agents_.extract_insights(feedback_text, task.descriptor, record.output);
    for (const InsightItem& insight : insights) {
      std::string id = state_.space(insight.target_space)
                           .save_knowledge(provider_, insight.text, agents_.aligner(), iteration,
                                           EntryOrigin::insight);
      since_prune(insight.target_space).push_back(id);
      record.new_entry_ids.push_back(std::move(id));
    }

    feedback_history_.push_back(feedback_text);
    if (static_cast<int>(feedback_history_.size()) >= config_.prune_interval) {
      prune_space(SpaceKind::general, iteration, record);
      prune_space(SpaceKind::prompt, iteration, record);
      feedback_history_.clear();
      record.pruned = true;
    }

    iterations_completed_ = iteration;
    return record;
  } catch (...) {
    state_ = snapshot_state;
    feedback_history_ = snapshot_history;
    since_prune_general_ = snapshot_since_general;
    since_prune_prompt_ = snapshot_since_prompt;
    throw;
  }
}

std::string Engine::run_reasoning(const Task& task) const {
  if (text::trim(task.input).empty()) {
    throw InvalidInputError("run_reasoning: task input is empty");
  }
  const auto general_hits = state_.general.retrieve_knowledge(
      provider_, task.descriptor, config_.retrieval_n, agents_.term_generator());
  const auto prompt_hits = state_.prompt.retrieve_knowledge(
      provider_, task.descriptor, config_.retrieval_n, agents_.term_generator());
  const std::vector<std::string> general_texts = texts_for(state_.general, general_hits);
  const std::vector<std::string> prompt_texts = texts_for(state_.prompt, prompt_hits);

  const std::string prompt = agents_.generate_prompt(task.descriptor, prompt_texts);
  return agents_.execute_operational(task.input, general_texts, prompt);
}

double Engine::evaluate_accuracy(const std::vector<Task>& test_tasks) const {
  if (test_tasks.empty()) throw InvalidInputError("evaluate_accuracy: no test tasks");
  for (const Task& task : test_tasks) {
    if (!task.expected) {
      throw InvalidInputError("evaluate_accuracy: task " + task.id + " has no expected output");
    }
  }
  std::size_t correct = 0;
  for (const Task& task : test_tasks) {
    if (run_reasoning(task) == text::trim_copy(*task.expected)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_tasks.size());
}

SessionReport Engine::run_session(const std::vector<Task>& tasks,
                                  const std::vector<Task>* eval_tasks,
                                  const IterationCallback& on_iteration) {
  if (tasks.empty()) throw InvalidInputError("run_session: task list is empty");

  SessionReport report;
  int reasoning_counter = 0;
  for (const Task& task : tasks) {
    IterationRecord record;
    bool iteration_done = false;
    std::optional<double> eval_accuracy;
    try {
      if (config_.mode == SessionMode::learning) {
        record = run_learning_iteration(task);
      } else {
        record.iteration = ++reasoning_counter;
        record.task_id = task.id;
        record.output = run_reasoning(task);
        record.verdict = IterationVerdict::none;
      }
      iteration_done = true;
      if (config_.mode == SessionMode::learning && eval_tasks && config_.eval_every > 0 &&
          record.iteration % config_.eval_every == 0) {
        eval_accuracy = evaluate_accuracy(*eval_tasks);
      }
    } catch (const std::exception& error) {
      report.aborted = true;
      report.error = error.what();
      if (!iteration_done) break;
      // The iteration itself completed (a periodic eval failed): keep its
      // record, then stop.
    }

    if (eval_accuracy) report.eval_points.push_back({record.iteration, *eval_accuracy});
    report.store_sizes.push_back({state_.general.size(), state_.prompt.size()});
    report.records.push_back(record);
    if (on_iteration) on_iteration(report.records.back(), eval_accuracy, *this);
    if (report.aborted) break;
  }
  return report;
}

MetricsWriter::MetricsWriter(const std::filesystem::path& path) : path_(path) {
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw Error("cannot open metrics file: " + path_.string());
  out << "iteration,task_id,verdict,gks_size,pks_size,pruned,eval_accuracy\n";
}

void MetricsWriter::write_row(const IterationRecord& record, StoreSizes sizes,
                              const std::optional<double>& eval_accuracy) {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot append to metrics file: " + path_.string());
  out << record.iteration << ',' << csv_escape(record.task_id) << ','
      << to_string(record.verdict) << ',' << sizes.general << ',' << sizes.prompt << ','
      << (record.pruned ? 1 : 0) << ',';
  if (eval_accuracy) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.4f", *eval_accuracy);
    out << buf;
  }
  out << '\n';
}

std::string session_report_to_json(const SessionReport& report) {
  json j;
  j["aborted"] = report.aborted;
  j["error"] = report.error;
  j["iterations"] = json::array();
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const IterationRecord& record = report.records[i];
    json r;
    r["iteration"] = record.iteration;
    r["task_id"] = record.task_id;
    r["retrieved_general"] = record.retrieved_general;
    r["retrieved_prompt"] = record.retrieved_prompt;
    r["prompt"] = record.prompt;
    r["output"] = record.output;
    r["verdict"] = std::string(to_string(record.verdict));
    if (record.feedback) r["feedback"] = *record.feedback;
    r["new_entry_ids"] = record.new_entry_ids;
    r["pruned"] = record.pruned;
    if (i < report.store_sizes.size()) {
      r["gks_size"] = report.store_sizes[i].general;
      r["pks_size"] = report.store_sizes[i].prompt;
    }
    j["iterations"].push_back(std::move(r));
  }
  j["eval_points"] = json::array();
  for (const EvalPoint& point : report.eval_points) {
    j["eval_points"].push_back(json{{"iteration", point.iteration}, {"accuracy", point.accuracy}});
  }
  return j.dump(2) + "\n";
}

void write_session_report(const SessionReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw Error("cannot open session report file: " + path.string());
  out << session_report_to_json(report);
}

}  // namespace clu
