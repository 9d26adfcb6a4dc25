#include "clu/crypto_task.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "clu/errors.hpp"
#include "clu/learning_loop.hpp"
#include "clu/text.hpp"
#include "json_out.hpp"

namespace clu {

namespace {

using nlohmann::json;

/// Uniform integer in [0, n) from a fully specified generator. Rejection
/// sampling keeps the draw sequence identical on every platform
/// (uniform_int_distribution is implementation-defined).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t value;
  do {
    value = rng();
  } while (value >= limit);
  return value % n;
}

std::optional<std::string> parse_answer_line(const std::string& response) {
  const std::vector<std::string> lines = text::split_lines(response);
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    const std::string trimmed = text::trim_copy(*it);
    if (trimmed.empty()) continue;
    if (text::starts_with(trimmed, "ANSWER:")) return text::trim_copy(trimmed.substr(7));
    return std::nullopt;  // last non-blank line is not an answer line
  }
  return std::nullopt;
}

}  // namespace

std::string encode_oracle(std::string_view sentence, int position) {
  if (position < 1) throw InvalidInputError("encode_oracle: position must be >= 1");
  if (sentence.empty()) throw InvalidInputError("encode_oracle: sentence is empty");

  std::string encoded;
  for (const std::string& word : text::split(sentence, ' ')) {
    if (!text::is_alphabetic_word(word)) {
      throw InvalidInputError("encode_oracle: sentence must be single-space-separated alphabetic "
                              "words, got token \"" +
                              word + "\"");
    }
    if (word.size() >= static_cast<std::size_t>(position)) {
      encoded.push_back(word[static_cast<std::size_t>(position) - 1]);
    }
  }
  return encoded;
}

VocabularyProfile default_vocabulary_profile() {
  VocabularyProfile profile;
  profile.word_list = bundled_vocabulary();
  return profile;
}

SentenceDataset generate_dataset(int n_shots, EncodingRule rule, std::uint64_t seed,
                                 const VocabularyProfile& profile) {
  if (n_shots < 1 || n_shots > 5) {
    throw InvalidInputError("generate_dataset: n_shots must be in [1, 5]");
  }
  if (rule.position < 1) throw InvalidInputError("generate_dataset: rule position must be >= 1");
  if (profile.word_list.empty()) throw GenerationError("generate_dataset: empty vocabulary");
  if (profile.min_words_per_sentence < 2 ||
      profile.max_words_per_sentence < profile.min_words_per_sentence) {
    throw InvalidInputError("generate_dataset: bad words_per_sentence range");
  }
  for (const std::string& word : profile.word_list) {
    if (!text::is_alphabetic_word(word) || word != text::to_lower(word)) {
      throw GenerationError("generate_dataset: vocabulary word \"" + word +
                            "\" is not lowercase alphabetic");
    }
  }
  std::size_t qualifying = 0;
  for (const std::string& word : profile.word_list) {
    if (word.size() >= static_cast<std::size_t>(rule.position)) ++qualifying;
  }
  if (qualifying < 50) {
    throw GenerationError("generate_dataset: vocabulary has only " + std::to_string(qualifying) +
                          " words of length >= " + std::to_string(rule.position) +
                          " (need at least 50)");
  }

  std::mt19937_64 rng(seed);
  const int span = profile.max_words_per_sentence - profile.min_words_per_sentence + 1;

  auto make_sentence = [&]() -> std::optional<std::string> {
    const int word_count = profile.min_words_per_sentence + static_cast<int>(bounded(rng, span));
    std::vector<std::string> words;
    words.reserve(word_count);
    int long_enough = 0;
    for (int i = 0; i < word_count; ++i) {
      const std::string& word = profile.word_list[bounded(rng, profile.word_list.size())];
      if (word.size() >= static_cast<std::size_t>(rule.position)) ++long_enough;
      words.push_back(word);
    }
    if (long_enough < 2) return std::nullopt;
    std::string sentence = text::join(words, " ");
    if (profile.capitalize_first) {
      sentence[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sentence[0])));
    }
    return sentence;
  };

  const std::size_t total = static_cast<std::size_t>(n_shots) + kTestPairCount;
  std::unordered_set<std::string> seen;
  std::vector<SentencePair> pairs;
  pairs.reserve(total);
  std::size_t attempts = 0;
  const std::size_t max_attempts = total * 1000;
  while (pairs.size() < total) {
    if (++attempts > max_attempts) {
      throw GenerationError("generate_dataset: could not produce enough distinct sentences");
    }
    std::optional<std::string> sentence = make_sentence();
    if (!sentence || !seen.insert(*sentence).second) continue;
    pairs.push_back({*sentence, encode_oracle(*sentence, rule.position)});
  }

  SentenceDataset dataset;
  dataset.rule = rule;
  dataset.rng_seed = seed;
  dataset.shots.assign(pairs.begin(), pairs.begin() + n_shots);
  dataset.test_pairs.assign(pairs.begin() + n_shots, pairs.end());
  return dataset;
}

std::string build_nshot_prompt(const std::vector<SentencePair>& shots,
                               std::string_view query_sentence) {
  if (shots.empty()) throw InvalidInputError("build_nshot_prompt: at least one shot is required");
  std::string prompt;
  for (const SentencePair& shot : shots) {
    prompt += "\"" + shot.sentence + "\" -> \"" + shot.encoded + "\"\n";
  }
  prompt += "What is \"" + std::string(kInputOpen) + std::string(query_sentence) +
            std::string(kInputClose) + "\" -> ?";
  return prompt;
}

BaselineMode baseline_mode_from_string(std::string_view s) {
  if (s == "io") return BaselineMode::io;
  if (s == "cot") return BaselineMode::cot;
  throw InvalidInputError("unknown baseline mode: " + std::string(s));
}

double run_baseline(const SentenceDataset& dataset, BaselineMode mode, Reasoner& backend) {
  if (dataset.test_pairs.empty()) throw InvalidInputError("run_baseline: dataset has no test pairs");

  std::size_t correct = 0;
  std::size_t missing_answer_lines = 0;
  for (const SentencePair& pair : dataset.test_pairs) {
    std::string request = build_nshot_prompt(dataset.shots, pair.sentence);
    if (mode == BaselineMode::cot) {
      request = "Reason step by step: work out how each example sentence maps to its code, state "
                "the rule, then apply it to the query sentence.\n\n" +
                request +
                "\n\nEnd your reply with one final line formatted exactly as: ANSWER: <encoded "
                "text>";
    }
    const std::string response = backend.complete(AgentRole::Operational, request);
    if (mode == BaselineMode::io) {
      if (text::trim_copy(response) == pair.encoded) ++correct;
    } else {
      const std::optional<std::string> answer = parse_answer_line(response);
      if (!answer) {
        ++missing_answer_lines;
      } else if (*answer == pair.encoded) {
        ++correct;
      }
    }
  }
  if (missing_answer_lines > 0) {
    std::cerr << "baseline: " << missing_answer_lines
              << " response(s) had no terminal ANSWER line (counted incorrect)\n";
  }
  return static_cast<double>(correct) / static_cast<double>(dataset.test_pairs.size());
}

std::string probe_rule(const Engine& engine) {
  Task probe;
  probe.id = "probe";
  probe.input = std::string(kProbeQuestion);
  probe.descriptor = std::string(kProbeQuestion);
  return engine.run_reasoning(probe);
}

void save_dataset(const SentenceDataset& dataset, const std::filesystem::path& path) {
  std::string out;
  out.reserve(1 << 16);
  out += "{\"rule_position\":" + std::to_string(dataset.rule.position);
  out += ",\"rng_seed\":" + std::to_string(dataset.rng_seed);
  auto append_pairs = [&out](const char* key, const std::vector<SentencePair>& pairs) {
    out += ",\"";
    out += key;
    out += "\":[";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i) out.push_back(',');
      out += "{\"sentence\":";
      json_out::append_string(out, pairs[i].sentence);
      out += ",\"encoded\":";
      json_out::append_string(out, pairs[i].encoded);
      out.push_back('}');
    }
    out.push_back(']');
  };
  append_pairs("shots", dataset.shots);
  append_pairs("test_pairs", dataset.test_pairs);
  out += "}\n";

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open dataset file for writing: " + path.string());
  file << out;
}

SentenceDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();

  json root;
  try {
    root = json::parse(buffer.str());
  } catch (const json::exception& ex) {
    throw ParseError("dataset parse error: " + std::string(ex.what()));
  }

  try {
    SentenceDataset dataset;
    dataset.rule.position = root.at("rule_position").get<int>();
    dataset.rng_seed = root.at("rng_seed").get<std::uint64_t>();
    auto read_pairs = [&](const char* key, std::vector<SentencePair>& pairs) {
      for (const auto& item : root.at(key)) {
        SentencePair pair{item.at("sentence").get<std::string>(),
                          item.at("encoded").get<std::string>()};
        if (encode_oracle(pair.sentence, dataset.rule.position) != pair.encoded) {
          throw ParseError("dataset entry \"" + pair.sentence +
                           "\" fails oracle re-validation; file is corrupt");
        }
        pairs.push_back(std::move(pair));
      }
    };
    read_pairs("shots", dataset.shots);
    read_pairs("test_pairs", dataset.test_pairs);
    if (dataset.shots.empty()) throw ParseError("dataset has no shots");
    return dataset;
  } catch (const json::exception& ex) {
    throw ParseError("dataset is missing fields: " + std::string(ex.what()));
  }
}

}  // namespace clu
