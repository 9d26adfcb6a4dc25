#include <doctest.h>

#include <set>

#include "clu/crypto_task.hpp"
#include "clu/errors.hpp"
#include "clu/text.hpp"
#include "test_support.hpp"

using namespace clu;
using namespace clu::testing;

namespace {

/// Independent character-walk encoder: scans the sentence byte by byte
/// instead of splitting into words.
std::string char_walk_encode(const std::string& sentence, int position) {
  std::string out;
  std::size_t word_start = 0;
  for (std::size_t i = 0; i <= sentence.size(); ++i) {
    if (i == sentence.size() || sentence[i] == ' ') {
      const std::size_t len = i - word_start;
      if (len >= static_cast<std::size_t>(position)) {
        out.push_back(sentence[word_start + position - 1]);
      }
      word_start = i + 1;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("encode_oracle reproduces the worked examples") {
  CHECK(encode_oracle("Neural networks transform data efficiently", 2) == "eeraf");
  CHECK(encode_oracle("Artificial intelligence automates decisions", 2) == "rnue");
  CHECK(encode_oracle("Amazing Large language models", 2) == "maao");
  CHECK(encode_oracle("Gradient descent optimizes loss functions", 2) == "repou");
  CHECK(encode_oracle("a I x", 2) == "");
  CHECK(encode_oracle("big cats run", 1) == "bcr");
}

TEST_CASE("encode_oracle rejects invalid sentences") {
  CHECK_THROWS_AS(encode_oracle("", 2), InvalidInputError);
  CHECK_THROWS_AS(encode_oracle("two  spaces", 2), InvalidInputError);
  CHECK_THROWS_AS(encode_oracle("trailing space ", 2), InvalidInputError);
  CHECK_THROWS_AS(encode_oracle("with, punctuation", 2), InvalidInputError);
  CHECK_THROWS_AS(encode_oracle("number 42 inside", 2), InvalidInputError);
  CHECK_THROWS_AS(encode_oracle("fine words", 0), InvalidInputError);
}

TEST_CASE("oracle length law and i=1 behavior on generated sentences") {
  const SentenceDataset dataset = generate_dataset(3, EncodingRule{2}, 7);
  for (const auto& pair : dataset.test_pairs) {
    const std::size_t words = text::split(pair.sentence, ' ').size();
    CHECK(encode_oracle(pair.sentence, 1).size() == words);
    for (int i = 1; i <= 12; ++i) {
      std::size_t qualifying = 0;
      for (const auto& word : text::split(pair.sentence, ' ')) {
        if (word.size() >= static_cast<std::size_t>(i)) ++qualifying;
      }
      CHECK(encode_oracle(pair.sentence, i).size() == qualifying);
    }
  }
}

TEST_CASE("oracle agrees with the independent character-walk implementation") {
  std::uint64_t seed = 100;
  for (int batch = 0; batch < 4; ++batch) {
    const SentenceDataset dataset = generate_dataset(5, EncodingRule{2}, seed++);
    for (const auto& pair : dataset.test_pairs) {
      for (int i = 1; i <= 4; ++i) {
        CHECK(encode_oracle(pair.sentence, i) == char_walk_encode(pair.sentence, i));
      }
    }
  }
}

TEST_CASE("generate_dataset is deterministic and well-formed") {
  const SentenceDataset a = generate_dataset(3, EncodingRule{2}, 42);
  const SentenceDataset b = generate_dataset(3, EncodingRule{2}, 42);
  REQUIRE(a.shots.size() == 3);
  REQUIRE(a.test_pairs.size() == 150);
  CHECK(a.rng_seed == 42);
  for (std::size_t i = 0; i < a.shots.size(); ++i) {
    CHECK(a.shots[i].sentence == b.shots[i].sentence);
  }
  for (std::size_t i = 0; i < a.test_pairs.size(); ++i) {
    CHECK(a.test_pairs[i].sentence == b.test_pairs[i].sentence);
    CHECK(a.test_pairs[i].encoded == b.test_pairs[i].encoded);
  }

  // Distinctness across the whole dataset, and self-consistent encodings.
  std::set<std::string> seen;
  auto check_pair = [&](const SentencePair& pair) {
    CHECK(seen.insert(pair.sentence).second);
    CHECK(encode_oracle(pair.sentence, 2) == pair.encoded);
    CHECK(pair.encoded.size() >= 2);  // at least two sufficiently long words
    const auto words = text::split(pair.sentence, ' ');
    CHECK(words.size() >= 4);
    CHECK(words.size() <= 8);
  };
  for (const auto& pair : a.shots) check_pair(pair);
  for (const auto& pair : a.test_pairs) check_pair(pair);
}

TEST_CASE("different seeds give different test sentence multisets") {
  const SentenceDataset a = generate_dataset(1, EncodingRule{2}, 1);
  const SentenceDataset b = generate_dataset(1, EncodingRule{2}, 2);
  std::multiset<std::string> sa, sb;
  for (const auto& pair : a.test_pairs) sa.insert(pair.sentence);
  for (const auto& pair : b.test_pairs) sb.insert(pair.sentence);
  CHECK(sa != sb);
}

TEST_CASE("generate_dataset validates its inputs") {
  CHECK_THROWS_AS(generate_dataset(0, EncodingRule{2}, 1), InvalidInputError);
  CHECK_THROWS_AS(generate_dataset(6, EncodingRule{2}, 1), InvalidInputError);
  CHECK_THROWS_AS(generate_dataset(1, EncodingRule{0}, 1), InvalidInputError);

  VocabularyProfile tiny;
  tiny.word_list = {"cat", "dog", "owl"};
  CHECK_THROWS_AS(generate_dataset(1, EncodingRule{2}, 1, tiny), GenerationError);

  VocabularyProfile short_words = default_vocabulary_profile();
  CHECK_THROWS_AS(generate_dataset(1, EncodingRule{11}, 1, short_words), GenerationError);
}

TEST_CASE("bundled vocabulary is 1000 unique lowercase alphabetic words") {
  const auto& words = bundled_vocabulary();
  CHECK(words.size() == 1000);
  std::set<std::string> unique(words.begin(), words.end());
  CHECK(unique.size() == 1000);
  for (const auto& word : words) {
    CHECK(text::is_alphabetic_word(word));
    CHECK(word == text::to_lower(word));
  }
}

TEST_CASE("build_nshot_prompt renders shot lines plus a delimited query") {
  const std::vector<SentencePair> one = {{"Alpha beta", "lb"}};
  const std::string prompt = build_nshot_prompt(one, "Gamma delta");
  const auto lines = text::split_lines(prompt);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "\"Alpha beta\" -> \"lb\"");
  CHECK(lines[1] == "What is \"<<INPUT>>Gamma delta<</INPUT>>\" -> ?");

  const std::vector<SentencePair> worked = {
      {"Neural networks transform data efficiently", "eeraf"},
      {"Artificial intelligence automates decisions", "rnue"},
      {"Amazing Large language models", "maao"},
  };
  const std::string three = build_nshot_prompt(worked, "Gradient descent optimizes loss functions");
  for (const auto& shot : worked) {
    CHECK(three.find("\"" + shot.sentence + "\" -> \"" + shot.encoded + "\"") !=
          std::string::npos);
  }
  // Delimiters wrap only the query sentence.
  CHECK(three.find("<<INPUT>>Gradient descent optimizes loss functions<</INPUT>>") !=
        std::string::npos);
  CHECK(three.find("<<INPUT>>") == three.rfind("<<INPUT>>"));
  CHECK_THROWS_AS(build_nshot_prompt({}, "query"), InvalidInputError);
}

TEST_CASE("baselines score exact-match accuracy over the test pairs") {
  const SentenceDataset dataset = generate_dataset(2, EncodingRule{2}, 11);

  SUBCASE("never-learn backend scores zero in both modes") {
    auto io_backend = scripted_from(R"({"role": "operational", "response": "no idea"})");
    CHECK(run_baseline(dataset, BaselineMode::io, io_backend) == doctest::Approx(0.0));
    auto cot_backend = scripted_from(R"({"role": "operational", "response": "no idea"})");
    CHECK(run_baseline(dataset, BaselineMode::cot, cot_backend) == doctest::Approx(0.0));
  }

  SUBCASE("oracle backend scores one in both modes") {
    auto backend = ScriptedReasoner(load_script(assets_dir() / "scripts" / "oracle.jsonl"));
    CHECK(run_baseline(dataset, BaselineMode::io, backend) == doctest::Approx(1.0));
    auto backend2 = ScriptedReasoner(load_script(assets_dir() / "scripts" / "oracle.jsonl"));
    CHECK(run_baseline(dataset, BaselineMode::cot, backend2) == doctest::Approx(1.0));
  }

  SUBCASE("cot responses without a terminal ANSWER line are incorrect, not errors") {
    auto backend = scripted_from(
        R"({"role": "operational", "response": "I think the rule is positional.\nNo final line."})");
    CHECK(run_baseline(dataset, BaselineMode::cot, backend) == doctest::Approx(0.0));
  }

  SUBCASE("cot answers are read from the last non-blank line only") {
    auto backend = scripted_from(
        R"({"role": "operational", "response": "step one\nstep two\nANSWER: {{oracle:2}}\n"})");
    CHECK(run_baseline(dataset, BaselineMode::cot, backend) == doctest::Approx(1.0));
  }
}

TEST_CASE("dataset files reload exactly and reject corruption") {
  TempDir dir("clu-dataset");
  const SentenceDataset dataset = generate_dataset(3, EncodingRule{2}, 77);
  const auto path = dir.file("dataset.json");
  save_dataset(dataset, path);

  const SentenceDataset loaded = load_dataset(path);
  CHECK(loaded.rule.position == dataset.rule.position);
  CHECK(loaded.rng_seed == dataset.rng_seed);
  REQUIRE(loaded.shots.size() == dataset.shots.size());
  REQUIRE(loaded.test_pairs.size() == dataset.test_pairs.size());
  for (std::size_t i = 0; i < dataset.test_pairs.size(); ++i) {
    CHECK(loaded.test_pairs[i].sentence == dataset.test_pairs[i].sentence);
    CHECK(loaded.test_pairs[i].encoded == dataset.test_pairs[i].encoded);
  }

  // Canonical serialization: saving the loaded dataset reproduces the bytes.
  const auto again = dir.file("again.json");
  save_dataset(loaded, again);
  CHECK(read_file(path) == read_file(again));

  // A tampered encoding fails re-validation on load.
  std::string payload = read_file(path);
  const std::string needle = "\"encoded\":\"" + dataset.shots[0].encoded + "\"";
  payload.replace(payload.find(needle), needle.size(), "\"encoded\":\"zzzzz\"");
  write_file(path, payload);
  CHECK_THROWS_AS(load_dataset(path), ParseError);
  CHECK_THROWS_AS(load_dataset(dir.file("missing.json")), Error);
}

TEST_CASE("baseline mode tokens parse") {
  CHECK(baseline_mode_from_string("io") == BaselineMode::io);
  CHECK(baseline_mode_from_string("cot") == BaselineMode::cot);
  CHECK_THROWS_AS(baseline_mode_from_string("tot"), InvalidInputError);
}
