#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "clu/reasoner.hpp"

namespace clu {

class Engine;

/// Pick the i-th letter of each sufficiently long word.
struct EncodingRule {
  int position = 2;
};

struct SentencePair {
  std::string sentence;
  std::string encoded;
};

struct VocabularyProfile {
  std::vector<std::string> word_list;  // lowercase, purely alphabetic
  bool capitalize_first = true;
  int min_words_per_sentence = 4;
  int max_words_per_sentence = 8;
};

/// The bundled 1,000-word vocabulary.
const std::vector<std::string>& bundled_vocabulary();
VocabularyProfile default_vocabulary_profile();

struct SentenceDataset {
  EncodingRule rule;
  std::vector<SentencePair> shots;       // length n
  std::vector<SentencePair> test_pairs;  // length 150
  std::uint64_t rng_seed = 0;
};

inline constexpr int kTestPairCount = 150;

inline constexpr std::string_view kProbeQuestion =
    "What is the hidden transformation rule that you have learned?";

/// Concatenates, in word order, the i-th character (1-indexed) of every word
/// with at least i letters. Case is preserved; the result may be empty.
/// The sentence must split on single spaces into purely alphabetic words.
std::string encode_oracle(std::string_view sentence, int position);

/// Deterministic for equal (seed, profile, rule, n_shots). Produces
/// n_shots + 150 distinct sentences, each with at least two words long
/// enough for the rule. Throws GenerationError when the vocabulary is too
/// small (fewer than 50 words of length >= rule.position).
SentenceDataset generate_dataset(int n_shots, EncodingRule rule, std::uint64_t seed,
                                 const VocabularyProfile& profile = default_vocabulary_profile());

/// Renders `"<sentence>" -> "<encoded>"` lines followed by the query line;
/// the input delimiters wrap only the query sentence.
std::string build_nshot_prompt(const std::vector<SentencePair>& shots,
                               std::string_view query_sentence);

enum class BaselineMode { io, cot };

BaselineMode baseline_mode_from_string(std::string_view s);

/// IO: the bare n-shot prompt per test pair. CoT: a step-by-step preamble
/// plus a required terminal "ANSWER: <text>" line; a missing answer line
/// counts as incorrect. Returns exact-match accuracy over the test pairs.
double run_baseline(const SentenceDataset& dataset, BaselineMode mode, Reasoner& backend);

/// Reasoning-phase probe: asks the fixed rule question through the engine
/// and returns the answer verbatim. Never mutates knowledge.
std::string probe_rule(const Engine& engine);

// Dataset files are canonical JSON so they diff cleanly and reload exactly.
void save_dataset(const SentenceDataset& dataset, const std::filesystem::path& path);
SentenceDataset load_dataset(const std::filesystem::path& path);

}  // namespace clu
