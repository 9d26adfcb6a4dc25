#include <doctest.h>

#include "clu/crypto_task.hpp"
#include "clu/errors.hpp"
#include "clu/learning_loop.hpp"
#include "clu/text.hpp"
#include "test_support.hpp"

using namespace clu;
using namespace clu::testing;

namespace {

SessionConfig learning_config() {
  SessionConfig config;
  config.mode = SessionMode::learning;
  config.goals = test_goals();
  return config;
}

Task supervised_task(const std::string& id, const std::string& input,
                     const std::string& expected) {
  Task task;
  task.id = id;
  task.input = input;
  task.expected = expected;
  task.descriptor = "map each sentence to its hidden code";
  return task;
}

// One failing loop pass: wrong output, negative feedback, one general insight.
const char* kNeverLearnScript = R"(
{"role": "search_terms", "response": "TERMS: hidden rule"}
{"role": "meta_prompt", "response": "Attempt the transformation."}
{"role": "operational", "response": "wrong answer"}
{"role": "alignment", "response": "TEXT: a vague note\nTAGS: note"}
{"role": "negative_feedback", "response": "The output did not match."}
{"role": "positive_feedback", "response": "Matched."}
{"role": "knowledge_insight", "response": "SPACE: general\nTEXT: try other letter positions"}
{"role": "pruning", "response": "DROP: everything"}
)";

}  // namespace

TEST_CASE("cold-start learning iteration records a failure and stores insights") {
  auto backend = scripted_from(kNeverLearnScript);
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  Engine engine(learning_config(), agents, embedder);

  const Task task = supervised_task("t1", "Some input sentence", "sis");
  const IterationRecord record = engine.run_learning_iteration(task);

  CHECK(record.iteration == 1);
  CHECK(record.task_id == "t1");
  CHECK(record.retrieved_general.empty());  // cold start: empty spaces
  CHECK(record.retrieved_prompt.empty());
  CHECK(record.prompt == "Attempt the transformation.");
  CHECK(record.output == "wrong answer");
  CHECK(record.verdict == IterationVerdict::failure);
  CHECK(record.feedback == "The output did not match.");
  CHECK(record.new_entry_ids.size() == 1);
  CHECK_FALSE(record.pruned);
  CHECK(engine.feedback_history().size() == 1);
  CHECK(engine.state().general.size() == 1);
  CHECK(engine.state().general.entry(record.new_entry_ids[0]).aligned_text == "a vague note");
  CHECK(engine.state().general.entry(record.new_entry_ids[0]).origin == EntryOrigin::insight);
}

TEST_CASE("success path routes positive feedback only") {
  auto backend = scripted_from(R"(
{"role": "search_terms", "response": "TERMS: rule"}
{"role": "meta_prompt", "response": "Apply it."}
{"role": "operational", "response": "{{oracle:2}}"}
{"role": "alignment", "response": "TEXT: the rule works\nTAGS: ok"}
{"role": "positive_feedback", "response": "Reinforce the position-2 extraction."}
{"role": "knowledge_insight", "response": "NO_INSIGHTS"}
)");
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  Engine engine(learning_config(), agents, embedder);

  // expected equals the position-2 oracle output
  const Task good = supervised_task("t1", "big cats run fast", "iaua");
  const IterationRecord record = engine.run_learning_iteration(good);
  CHECK(record.verdict == IterationVerdict::success);
  CHECK(record.feedback == "Reinforce the position-2 extraction.");

  int positive = 0, negative = 0;
  for (const auto& exchange : backend.exchanges()) {
    if (exchange.role == AgentRole::PositiveFeedback) ++positive;
    if (exchange.role == AgentRole::NegativeFeedback) ++negative;
  }
  CHECK(positive == 1);
  CHECK(negative == 0);
}

TEST_CASE("insights are routed to their target spaces through the aligner") {
  auto backend = scripted_from(R"(
{"role": "search_terms", "response": "TERMS: rule"}
{"role": "meta_prompt", "response": "Go."}
{"role": "operational", "response": "nope"}
{"role": "negative_feedback", "response": "Wrong."}
{"role": "knowledge_insight", "response": "SPACE: general\nTEXT: general fact\nSPACE: prompt\nTEXT: prompt hint"}
{"role": "alignment", "match": "general fact", "response": "TEXT: ALIGNED general fact"}
{"role": "alignment", "response": "TEXT: ALIGNED prompt hint"}
)");
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  Engine engine(learning_config(), agents, embedder);

  engine.run_learning_iteration(supervised_task("t", "alpha beta", "le"));
  CHECK(engine.state().general.size() == 1);
  CHECK(engine.state().prompt.size() == 1);
  CHECK(engine.state().general.entries().begin()->second.aligned_text == "ALIGNED general fact");
  CHECK(engine.state().prompt.entries().begin()->second.aligned_text == "ALIGNED prompt hint");
}

TEST_CASE("prune fires on the interval, clears history, and scopes recent entries") {
  auto backend = scripted_from(kNeverLearnScript);
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  SessionConfig config = learning_config();
  config.prune_interval = 5;
  Engine engine(config, agents, embedder);

  const Task task = supervised_task("t", "alpha beta gamma", "lea");
  for (int i = 1; i <= 4; ++i) {
    const IterationRecord record = engine.run_learning_iteration(task);
    CHECK_FALSE(record.pruned);
    CHECK(engine.feedback_history().size() == static_cast<std::size_t>(i));
  }
  CHECK(engine.state().general.size() == 4);

  const IterationRecord fifth = engine.run_learning_iteration(task);
  CHECK(fifth.pruned);
  CHECK(engine.feedback_history().empty());
  // All-DROP pruner: the five insight entries created since the start are gone.
  CHECK(engine.state().general.size() == 0);
}

TEST_CASE("seeded knowledge survives scoped pruning but not full-store pruning") {
  HashedTrigramEmbedder embedder;

  SUBCASE("scoped (default): seeds created before the window stay put") {
    auto backend = scripted_from(kNeverLearnScript);
    AgentSuite agents(backend, default_templates(), test_goals());
    SessionConfig config = learning_config();
    config.prune_interval = 2;
    Engine engine(config, agents, embedder);
    engine.seed_knowledge(SpaceKind::general, "seeded directive");
    // The seed is inside the first window; survive it by pruning once first.
    const Task task = supervised_task("t", "alpha beta", "le");
    engine.run_learning_iteration(task);
    engine.run_learning_iteration(task);  // prune #1 drops seed + insights
    CHECK(engine.state().general.size() == 0);

    const std::string kept = engine.seed_knowledge(SpaceKind::general, "late seed");
    engine.run_learning_iteration(task);
    engine.run_learning_iteration(task);  // prune #2: scope = late seed + 2 insights
    CHECK_FALSE(engine.state().general.contains(kept));  // seeds saved after a prune are in scope
  }

  SUBCASE("prune_full_store widens the scope to every entry") {
    auto backend = scripted_from(kNeverLearnScript);
    AgentSuite agents(backend, default_templates(), test_goals());
    SessionConfig config = learning_config();
    config.prune_interval = 1;
    config.prune_full_store = true;
    Engine engine(config, agents, embedder);
    engine.seed_knowledge(SpaceKind::general, "seeded directive");
    engine.run_learning_iteration(supervised_task("t", "alpha beta", "le"));
    CHECK(engine.state().general.size() == 0);
  }
}

TEST_CASE("mid-iteration backend failure rolls the state back") {
  HashedTrigramEmbedder embedder;

  SUBCASE("failure before any save (insight agent exhausted)") {
    auto backend = scripted_from(R"(
{"role": "search_terms", "response": "TERMS: rule"}
{"role": "meta_prompt", "response": "Go."}
{"role": "operational", "response": "nope"}
{"role": "negative_feedback", "response": "Wrong."}
{"role": "alignment", "response": "TEXT: note"}
{"role": "knowledge_insight", "max_uses": 2, "response": "SPACE: general\nTEXT: note"}
)");
    AgentSuite agents(backend, default_templates(), test_goals());
    Engine engine(learning_config(), agents, embedder);
    const Task task = supervised_task("t", "alpha beta", "le");
    engine.run_learning_iteration(task);
    engine.run_learning_iteration(task);
    const std::uint64_t before = state_digest(engine.state());
    const auto history_before = engine.feedback_history();

    CHECK_THROWS_AS(engine.run_learning_iteration(task), ScriptExhaustedError);
    CHECK(state_digest(engine.state()) == before);
    CHECK(engine.feedback_history() == history_before);
    CHECK(engine.iterations_completed() == 2);
  }

  SUBCASE("failure after a partial save (second insight's alignment fails)") {
    auto backend = scripted_from(R"(
{"role": "search_terms", "response": "TERMS: rule"}
{"role": "meta_prompt", "response": "Go."}
{"role": "operational", "response": "nope"}
{"role": "negative_feedback", "response": "Wrong."}
{"role": "knowledge_insight", "response": "SPACE: general\nTEXT: first\nSPACE: general\nTEXT: second"}
{"role": "alignment", "max_uses": 1, "response": "TEXT: aligned first"}
)");
    AgentSuite agents(backend, default_templates(), test_goals());
    Engine engine(learning_config(), agents, embedder);
    const std::uint64_t before = state_digest(engine.state());
    CHECK_THROWS_AS(engine.run_learning_iteration(supervised_task("t", "alpha beta", "le")),
                    ScriptExhaustedError);
    CHECK(state_digest(engine.state()) == before);
    CHECK(engine.state().general.size() == 0);
    CHECK(engine.iterations_completed() == 0);
  }
}

TEST_CASE("run_reasoning is pure and reuses the retrieval/prompt path") {
  auto backend = scripted_from(R"(
{"role": "search_terms", "response": "TERMS: rule"}
{"role": "meta_prompt", "response": "Apply the rule."}
{"role": "operational", "response": "{{oracle:2}}"}
)");
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  Engine engine(learning_config(), agents, embedder);
  engine.seed_knowledge(SpaceKind::general, "APPLY_RULE pos=2");

  const std::uint64_t before = state_digest(engine.state());
  Task task = supervised_task("t", "Gradient descent optimizes loss functions", "repou");
  CHECK(engine.run_reasoning(task) == "repou");
  CHECK(state_digest(engine.state()) == before);
  CHECK(engine.feedback_history().empty());
}

TEST_CASE("evaluate_accuracy") {
  HashedTrigramEmbedder embedder;

  SUBCASE("all-correct and never-correct endpoints") {
    auto correct = scripted_from(R"(
{"role": "search_terms", "response": "TERMS: rule"}
{"role": "meta_prompt", "response": "Apply."}
{"role": "operational", "response": "{{oracle:2}}"}
)");
    AgentSuite agents(correct, default_templates(), test_goals());
    Engine engine(learning_config(), agents, embedder);
    std::vector<Task> tasks;
    for (int i = 0; i < 10; ++i) {
      tasks.push_back(supervised_task("t" + std::to_string(i), "alpha beta gamma", "lea"));
    }
    CHECK(engine.evaluate_accuracy(tasks) == doctest::Approx(1.0));

    auto wrong = scripted_from(kNeverLearnScript);
    AgentSuite bad_agents(wrong, default_templates(), test_goals());
    Engine bad_engine(learning_config(), bad_agents, embedder);
    CHECK(bad_engine.evaluate_accuracy(tasks) == doctest::Approx(0.0));
  }

  SUBCASE("half-correct counted fixture over 10 tasks") {
    auto backend = scripted_from(R"(
{"role": "search_terms", "response": "TERMS: rule"}
{"role": "meta_prompt", "response": "Apply."}
{"role": "operational", "match": "<<INPUT>>alpha", "response": "yes"}
{"role": "operational", "response": "no"}
)");
    AgentSuite agents(backend, default_templates(), test_goals());
    Engine engine(learning_config(), agents, embedder);
    std::vector<Task> tasks;
    for (int i = 0; i < 5; ++i) {
      tasks.push_back(supervised_task("a" + std::to_string(i), "alpha item", "yes"));
      tasks.push_back(supervised_task("b" + std::to_string(i), "beta item", "yes"));
    }
    CHECK(engine.evaluate_accuracy(tasks) == doctest::Approx(0.5));
  }

  SUBCASE("missing expected output is rejected") {
    auto backend = scripted_from(R"({"role": "*", "response": "x"})");
    AgentSuite agents(backend, default_templates(), test_goals());
    Engine engine(learning_config(), agents, embedder);
    Task task;
    task.id = "t";
    task.input = "input";
    task.descriptor = "d";
    CHECK_THROWS_AS(engine.evaluate_accuracy({task}), InvalidInputError);
  }
}

TEST_CASE("run_session learning: prune cadence and metrics stream") {
  auto backend = scripted_from(kNeverLearnScript);
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  SessionConfig config = learning_config();
  config.prune_interval = 5;
  config.eval_every = 0;
  Engine engine(config, agents, embedder);

  std::vector<Task> tasks(20, supervised_task("shot-1", "alpha beta gamma", "lea"));
  TempDir dir("clu-metrics");
  MetricsWriter metrics(dir.file("metrics.csv"));
  const SessionReport report = engine.run_session(tasks, nullptr,
      [&](const IterationRecord& record, const std::optional<double>& eval, const Engine& e) {
        metrics.write_row(record, {e.state().general.size(), e.state().prompt.size()}, eval);
      });

  REQUIRE(report.records.size() == 20);
  CHECK_FALSE(report.aborted);
  int prunes = 0;
  for (const auto& record : report.records) {
    if (record.pruned) {
      ++prunes;
      CHECK(record.iteration % 5 == 0);
    }
  }
  CHECK(prunes == 4);

  // Knowledge monotonicity between prunes: sizes never shrink except at a
  // prune event.
  for (std::size_t i = 1; i < report.store_sizes.size(); ++i) {
    if (!report.records[i].pruned) {
      CHECK(report.store_sizes[i].general >= report.store_sizes[i - 1].general);
      CHECK(report.store_sizes[i].prompt >= report.store_sizes[i - 1].prompt);
    }
  }

  const auto lines = text::split_lines(read_file(dir.file("metrics.csv")));
  REQUIRE(lines.size() == 21);  // header + 20 rows
  CHECK(lines[0] == "iteration,task_id,verdict,gks_size,pks_size,pruned,eval_accuracy");
  CHECK(lines[1] == "1,shot-1,failure,1,0,0,");
  CHECK(lines[5] == "5,shot-1,failure,0,0,1,");
}

TEST_CASE("run_session reasoning leaves knowledge untouched") {
  auto backend = scripted_from(R"(
{"role": "search_terms", "response": "TERMS: rule"}
{"role": "meta_prompt", "response": "Apply."}
{"role": "operational", "response": "{{oracle:2}}"}
)");
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  SessionConfig config = learning_config();
  config.mode = SessionMode::reasoning;
  Engine engine(config, agents, embedder);

  std::vector<Task> tasks(150, supervised_task("t", "alpha beta gamma", "lea"));
  const std::uint64_t before = state_digest(engine.state());
  const SessionReport report = engine.run_session(tasks);
  REQUIRE(report.records.size() == 150);
  for (const auto& record : report.records) {
    CHECK(record.verdict == IterationVerdict::none);
    CHECK(record.new_entry_ids.empty());
  }
  CHECK(state_digest(engine.state()) == before);
  CHECK(engine.feedback_history().empty());
}

TEST_CASE("run_session fails fast and still reports completed iterations") {
  auto backend = scripted_from(R"(
{"role": "search_terms", "response": "TERMS: rule"}
{"role": "meta_prompt", "response": "Go."}
{"role": "operational", "max_uses": 2, "response": "nope"}
{"role": "negative_feedback", "response": "Wrong."}
{"role": "knowledge_insight", "response": "NO_INSIGHTS"}
)");
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  Engine engine(learning_config(), agents, embedder);

  std::vector<Task> tasks(5, supervised_task("t", "alpha beta", "le"));
  const SessionReport report = engine.run_session(tasks);
  CHECK(report.aborted);
  CHECK(report.records.size() == 2);
  CHECK(report.error.find("script exhausted") != std::string::npos);
  CHECK(engine.iterations_completed() == 2);

  const std::string json = session_report_to_json(report);
  CHECK(json.find("\"aborted\": true") != std::string::npos);
}

TEST_CASE("convergence script reproduces the inflection curve") {
  auto backend = ScriptedReasoner(load_script(assets_dir() / "scripts" / "convergence_learn.jsonl"));
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  SessionConfig config = learning_config();
  config.prune_interval = 5;
  config.eval_every = 5;
  config.max_iterations = 20;
  Engine engine(config, agents, embedder);

  const SentenceDataset dataset = generate_dataset(1, EncodingRule{2}, 42);
  std::vector<Task> tasks;
  for (int i = 0; i < 20; ++i) {
    tasks.push_back(supervised_task("shot-1", dataset.shots[0].sentence,
                                    dataset.shots[0].encoded));
  }
  std::vector<Task> eval_tasks;
  for (std::size_t i = 0; i < 20; ++i) {  // a slice is enough for the shape check here
    eval_tasks.push_back(supervised_task("test-" + std::to_string(i),
                                         dataset.test_pairs[i].sentence,
                                         dataset.test_pairs[i].encoded));
  }

  const SessionReport report = engine.run_session(tasks, &eval_tasks);
  REQUIRE(report.eval_points.size() == 4);
  CHECK(report.eval_points[0].iteration == 5);
  CHECK(report.eval_points[0].accuracy == doctest::Approx(0.0));
  CHECK(report.eval_points[1].iteration == 10);
  CHECK(report.eval_points[1].accuracy == doctest::Approx(0.0));
  CHECK(report.eval_points[2].iteration == 15);
  CHECK(report.eval_points[2].accuracy == doctest::Approx(1.0));
  CHECK(report.eval_points[3].iteration == 20);
  CHECK(report.eval_points[3].accuracy == doctest::Approx(1.0));

  // After convergence the general space holds the rewritten directive.
  CHECK(engine.state().general.size() == 1);
  CHECK(engine.state().general.entries().begin()->second.aligned_text == "APPLY_RULE pos=2");

  // Feedback routing exclusivity: exactly one PF/NF per learning iteration.
  int feedback_calls = 0;
  for (const auto& exchange : backend.exchanges()) {
    if (exchange.role == AgentRole::PositiveFeedback ||
        exchange.role == AgentRole::NegativeFeedback) {
      ++feedback_calls;
    }
  }
  CHECK(feedback_calls == 20);
}

TEST_CASE("probe_rule answers from the knowledge state without mutating it") {
  HashedTrigramEmbedder embedder;

  SUBCASE("empty state yields the early hypothesis") {
    auto backend = ScriptedReasoner(load_script(assets_dir() / "scripts" / "convergence_probe.jsonl"));
    AgentSuite agents(backend, default_templates(), test_goals());
    Engine engine(learning_config(), agents, embedder);
    const std::uint64_t before = state_digest(engine.state());
    CHECK(probe_rule(engine) ==
          "The hidden transformation rule involves selecting specific letters from words in a "
          "phrase.");
    CHECK(state_digest(engine.state()) == before);
  }

  SUBCASE("a stored directive selects the converged hypothesis") {
    auto backend = ScriptedReasoner(load_script(assets_dir() / "scripts" / "convergence_probe.jsonl"));
    AgentSuite agents(backend, default_templates(), test_goals());
    Engine engine(learning_config(), agents, embedder);
    engine.seed_knowledge(SpaceKind::general, "APPLY_RULE pos=2");
    const std::uint64_t before = state_digest(engine.state());
    const std::string answer = probe_rule(engine);
    CHECK(answer == "The hidden transformation rule is to pick the second letter of each word.");
    CHECK(answer.find("second letter") != std::string::npos);
    CHECK(state_digest(engine.state()) == before);
  }
}

TEST_CASE("replace_state resumes iteration numbering after the newest entry") {
  auto backend = scripted_from(kNeverLearnScript);
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  Engine engine(learning_config(), agents, embedder);
  const Task task = supervised_task("t", "alpha beta", "le");
  engine.run_learning_iteration(task);
  engine.run_learning_iteration(task);

  const std::string payload = checkpoint_to_string(engine.state());
  Engine other(learning_config(), agents, embedder);
  other.replace_state(restore_checkpoint_from_string(payload));
  CHECK(other.iterations_completed() == 2);
  CHECK(state_digest(other.state()) == state_digest(engine.state()));
  const IterationRecord record = other.run_learning_iteration(task);
  CHECK(record.iteration == 3);
}

TEST_CASE("session config validation") {
  SessionConfig config = learning_config();
  config.prune_interval = 0;
  CHECK_THROWS_AS(config.validate(), InvalidInputError);
  config = learning_config();
  config.retrieval_n = 0;
  CHECK_THROWS_AS(config.validate(), InvalidInputError);
  config = learning_config();
  config.goals.main_goal = " ";
  CHECK_THROWS_AS(config.validate(), InvalidInputError);

  auto backend = scripted_from(R"({"role": "*", "response": "x"})");
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder small(64);
  SessionConfig mismatched = learning_config();
  mismatched.embedding_dim = 256;
  CHECK_THROWS_AS(Engine(mismatched, agents, small), InvalidInputError);
}

TEST_CASE("learning iterations in reasoning mode are rejected") {
  auto backend = scripted_from(R"({"role": "*", "response": "x"})");
  AgentSuite agents(backend, default_templates(), test_goals());
  HashedTrigramEmbedder embedder;
  SessionConfig config = learning_config();
  config.mode = SessionMode::reasoning;
  Engine engine(config, agents, embedder);
  CHECK_THROWS_AS(engine.run_learning_iteration(supervised_task("t", "a b", "")),
                  InvalidInputError);
}
