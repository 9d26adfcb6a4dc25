#include "clu/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clu/errors.hpp"

namespace clu {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : object.items()) {
    if (!known.count(item.key())) {
      throw ConfigError("config: unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

}  // namespace

GoalSet default_goals() {
  return GoalSet{
      "Find the hidden rule and learn the transformation logic",
      "Retrieve knowledge that helps uncover and apply the hidden transformation rule",
      "Store concise, reusable statements about the transformation rule",
  };
}

RunConfig default_run_config() {
  RunConfig config;
  config.session.goals = default_goals();
  return config;
}

void RunConfig::validate() const {
  session.validate();
  const bool live = reasoner.has_value();
  const bool offline = scripted.has_value();
  if (live && offline) {
    throw ConfigError("config: both a live reasoner and a scripted backend are selected");
  }
  if (!live && !offline) {
    throw ConfigError("config: no backend selected (set \"reasoner\" or \"scripted\")");
  }
  if (dataset.shots < 1 || dataset.shots > 5) {
    throw ConfigError("config: dataset.shots must be in [1, 5]");
  }
  if (dataset.rule_position < 1) throw ConfigError("config: dataset.rule_position must be >= 1");
}

RunConfig load_run_config(const std::filesystem::path& config_file) {
  std::ifstream in(config_file, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + config_file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();

  json root;
  try {
    root = json::parse(buffer.str());
  } catch (const json::exception& ex) {
    throw ConfigError("config parse error: " + std::string(ex.what()));
  }

  RunConfig config = default_run_config();
  try {
    reject_unknown_keys(root,
                        {"goals", "session", "reasoner", "scripted", "embedding", "dataset",
                         "template_dir", "checkpoint_path", "metrics_path", "report_path"},
                        "top level");

    if (root.contains("goals")) {
      const json& goals = root["goals"];
      reject_unknown_keys(goals, {"main", "retrieval", "storage"}, "goals");
      if (goals.contains("main")) config.session.goals.main_goal = goals["main"].get<std::string>();
      if (goals.contains("retrieval"))
        config.session.goals.retrieval_goal = goals["retrieval"].get<std::string>();
      if (goals.contains("storage"))
        config.session.goals.storage_goal = goals["storage"].get<std::string>();
    }

    if (root.contains("session")) {
      const json& session = root["session"];
      reject_unknown_keys(session,
                          {"mode", "prune_interval", "retrieval_n", "max_iterations", "rng_seed",
                           "eval_every", "prune_full_store", "embedding_dim"},
                          "session");
      if (session.contains("mode")) {
        const std::string mode = session["mode"].get<std::string>();
        if (mode == "learning") config.session.mode = SessionMode::learning;
        else if (mode == "reasoning") config.session.mode = SessionMode::reasoning;
        else throw ConfigError("config: unknown session.mode \"" + mode + "\"");
      }
      if (session.contains("prune_interval"))
        config.session.prune_interval = session["prune_interval"].get<int>();
      if (session.contains("retrieval_n"))
        config.session.retrieval_n = session["retrieval_n"].get<std::size_t>();
      if (session.contains("max_iterations"))
        config.session.max_iterations = session["max_iterations"].get<int>();
      if (session.contains("rng_seed"))
        config.session.rng_seed = session["rng_seed"].get<std::int64_t>();
      if (session.contains("eval_every"))
        config.session.eval_every = session["eval_every"].get<int>();
      if (session.contains("prune_full_store"))
        config.session.prune_full_store = session["prune_full_store"].get<bool>();
      if (session.contains("embedding_dim"))
        config.session.embedding_dim = session["embedding_dim"].get<std::size_t>();
    }

    if (root.contains("reasoner")) {
      const json& reasoner = root["reasoner"];
      reject_unknown_keys(reasoner,
                          {"endpoint_url", "model_name", "temperature", "max_output_tokens",
                           "request_timeout_ms", "max_retries", "api_key_env"},
                          "reasoner");
      ReasonerConfig rc;
      rc.endpoint_url = reasoner.at("endpoint_url").get<std::string>();
      if (reasoner.contains("model_name")) rc.model_name = reasoner["model_name"].get<std::string>();
      if (reasoner.contains("temperature")) rc.temperature = reasoner["temperature"].get<double>();
      if (reasoner.contains("max_output_tokens"))
        rc.max_output_tokens = reasoner["max_output_tokens"].get<int>();
      if (reasoner.contains("request_timeout_ms"))
        rc.request_timeout = std::chrono::milliseconds(reasoner["request_timeout_ms"].get<int>());
      if (reasoner.contains("max_retries")) rc.max_retries = reasoner["max_retries"].get<int>();
      if (reasoner.contains("api_key_env")) rc.api_key_env = reasoner["api_key_env"].get<std::string>();
      config.reasoner = std::move(rc);
    }

    if (root.contains("scripted")) {
      config.scripted = std::filesystem::path(root["scripted"].get<std::string>());
    }

    if (root.contains("embedding")) {
      const json& embedding = root["embedding"];
      reject_unknown_keys(
          embedding, {"endpoint_url", "model_name", "dim", "request_timeout_ms", "max_retries",
                      "api_key_env"},
          "embedding");
      RemoteEmbedderConfig ec;
      ec.endpoint_url = embedding.at("endpoint_url").get<std::string>();
      if (embedding.contains("model_name")) ec.model_name = embedding["model_name"].get<std::string>();
      if (embedding.contains("dim")) ec.dim = embedding["dim"].get<std::size_t>();
      if (embedding.contains("request_timeout_ms"))
        ec.request_timeout_ms = embedding["request_timeout_ms"].get<int>();
      if (embedding.contains("max_retries")) ec.max_retries = embedding["max_retries"].get<int>();
      if (embedding.contains("api_key_env"))
        ec.api_key_env = embedding["api_key_env"].get<std::string>();
      config.remote_embedding = std::move(ec);
    }

    if (root.contains("dataset")) {
      const json& dataset = root["dataset"];
      reject_unknown_keys(dataset, {"path", "shots", "rule_position", "seed"}, "dataset");
      if (dataset.contains("path")) {
        config.dataset.path = std::filesystem::path(dataset["path"].get<std::string>());
      }
      if (dataset.contains("shots")) config.dataset.shots = dataset["shots"].get<int>();
      if (dataset.contains("rule_position"))
        config.dataset.rule_position = dataset["rule_position"].get<int>();
      if (dataset.contains("seed")) config.dataset.seed = dataset["seed"].get<std::uint64_t>();
    }

    if (root.contains("template_dir"))
      config.template_dir = std::filesystem::path(root["template_dir"].get<std::string>());
    if (root.contains("checkpoint_path"))
      config.checkpoint_path = std::filesystem::path(root["checkpoint_path"].get<std::string>());
    if (root.contains("metrics_path"))
      config.metrics_path = std::filesystem::path(root["metrics_path"].get<std::string>());
    if (root.contains("report_path"))
      config.report_path = std::filesystem::path(root["report_path"].get<std::string>());
  } catch (const json::exception& ex) {
    throw ConfigError("config field has the wrong type: " + std::string(ex.what()));
  }
  return config;
}

std::unique_ptr<Reasoner> make_backend(const RunConfig& config) {
  config.validate();
  if (config.scripted) return std::make_unique<ScriptedReasoner>(load_script(*config.scripted));
  return std::make_unique<HttpReasoner>(*config.reasoner);
}

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const RunConfig& config) {
  if (config.remote_embedding) {
    RemoteEmbedderConfig ec = *config.remote_embedding;
    ec.dim = config.session.embedding_dim;
    return std::make_unique<RemoteEmbedder>(std::move(ec));
  }
  return std::make_unique<HashedTrigramEmbedder>(config.session.embedding_dim);
}

SentenceDataset obtain_dataset(const RunConfig& config) {
  if (config.dataset.path) return load_dataset(*config.dataset.path);
  return generate_dataset(config.dataset.shots, EncodingRule{config.dataset.rule_position},
                          config.dataset.seed);
}

}  // namespace clu
