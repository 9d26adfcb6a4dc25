#include "clu/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clu/errors.hpp"
#include "clu/text.hpp"
#include "json_out.hpp"

namespace clu {

namespace {

using nlohmann::json;
using json_out::append_float;
using json_out::append_string;

void append_entry(std::string& out, const KnowledgeEntry& entry) {
  out += "{\"id\":";
  append_string(out, entry.id);
  out += ",\"aligned_text\":";
  append_string(out, entry.aligned_text);
  out += ",\"tags\":[";
  for (std::size_t i = 0; i < entry.tags.size(); ++i) {
    if (i > 0) out.push_back(',');
    append_string(out, entry.tags[i]);
  }
  out += "],\"embedding\":[";
  for (std::size_t i = 0; i < entry.embedding.size(); ++i) {
    if (i > 0) out.push_back(',');
    append_float(out, entry.embedding[i]);
  }
  out += "],\"space_kind\":";
  append_string(out, to_string(entry.space_kind));
  out += ",\"created_iteration\":" + std::to_string(entry.created_iteration);
  out += ",\"origin\":";
  append_string(out, to_string(entry.origin));
  out.push_back('}');
}

void append_space(std::string& out, const KnowledgeSpace& space) {
  out += "{\"kind\":";
  append_string(out, to_string(space.kind()));
  out += ",\"embedding_dim\":" + std::to_string(space.embedding_dim());
  out += ",\"entries\":[";
  bool first = true;
  for (const auto& [id, entry] : space.entries()) {
    if (!first) out.push_back(',');
    first = false;
    append_entry(out, entry);
  }
  out += "]}";
}

KnowledgeEntry parse_entry(const json& j, SpaceKind expected_kind) {
  KnowledgeEntry entry;
  entry.id = j.at("id").get<std::string>();
  entry.aligned_text = j.at("aligned_text").get<std::string>();
  for (const auto& tag : j.at("tags")) entry.tags.push_back(tag.get<std::string>());
  for (const auto& component : j.at("embedding")) {
    entry.embedding.push_back(static_cast<float>(component.get<double>()));
  }
  entry.space_kind = space_kind_from_string(j.at("space_kind").get<std::string>());
  if (entry.space_kind != expected_kind) throw ParseError("entry space_kind differs from its space");
  entry.created_iteration = j.at("created_iteration").get<int>();
  if (entry.created_iteration < 0) throw ParseError("negative created_iteration");
  entry.origin = origin_from_string(j.at("origin").get<std::string>());
  return entry;
}

}  // namespace

std::string checkpoint_to_string(const KnowledgeState& state) {
  if (!(state.general.goals() == state.prompt.goals())) {
    throw InvalidInputError("checkpoint: spaces carry different goal sets");
  }
  const GoalSet& goals = state.general.goals();

  std::string out;
  out.reserve(4096);
  out += "{\"schema_version\":" + std::to_string(kCheckpointSchemaVersion);
  out += ",\"goals\":{\"main\":";
  append_string(out, goals.main_goal);
  out += ",\"retrieval\":";
  append_string(out, goals.retrieval_goal);
  out += ",\"storage\":";
  append_string(out, goals.storage_goal);
  out += "},\"spaces\":[";
  append_space(out, state.general);
  out.push_back(',');
  append_space(out, state.prompt);
  out += "]}\n";
  return out;
}

KnowledgeState restore_checkpoint_from_string(const std::string& payload) {
  json root;
  try {
    root = json::parse(payload);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("checkpoint parse error: ") + ex.what());
  }

  try {
    const int version = root.at("schema_version").get<int>();
    if (version != kCheckpointSchemaVersion) {
      throw SchemaVersionError("checkpoint schema_version " + std::to_string(version) +
                               " is not supported (expected " +
                               std::to_string(kCheckpointSchemaVersion) + ")");
    }

    GoalSet goals;
    goals.main_goal = root.at("goals").at("main").get<std::string>();
    goals.retrieval_goal = root.at("goals").at("retrieval").get<std::string>();
    goals.storage_goal = root.at("goals").at("storage").get<std::string>();

    const json& spaces = root.at("spaces");
    if (!spaces.is_array() || spaces.size() != 2) {
      throw ParseError("checkpoint must contain exactly two spaces");
    }

    std::size_t dim = spaces.at(0).at("embedding_dim").get<std::size_t>();
    KnowledgeState state(goals, dim);
    for (const auto& space_json : spaces) {
      const SpaceKind kind = space_kind_from_string(space_json.at("kind").get<std::string>());
      if (space_json.at("embedding_dim").get<std::size_t>() != dim) {
        throw ParseError("spaces disagree on embedding_dim");
      }
      KnowledgeSpace& space = state.space(kind);
      for (const auto& entry_json : space_json.at("entries")) {
        space.insert_restored(parse_entry(entry_json, kind));
      }
    }
    return state;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("checkpoint is missing fields: ") + ex.what());
  }
}

void write_checkpoint(const KnowledgeState& state, const std::filesystem::path& path) {
  const std::string payload = checkpoint_to_string(state);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open checkpoint file for writing: " + tmp.string());
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw Error("failed writing checkpoint: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

KnowledgeState restore_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return restore_checkpoint_from_string(buffer.str());
}

std::uint64_t state_digest(const KnowledgeState& state) {
  return text::fnv1a64(checkpoint_to_string(state));
}

}  // namespace clu
