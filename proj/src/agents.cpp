#include "clu/agents.hpp"

#include <algorithm>

#include "clu/errors.hpp"
#include "clu/text.hpp"

namespace clu {

namespace {

/// Internal signal: parsing failed on every attempt, repairs exhausted.
struct RepairFailure {
  std::string message;
};

template <typename T>
struct Parsed {
  std::optional<T> value;
  std::string error;

  static Parsed ok(T v) { return {std::move(v), {}}; }
  static Parsed fail(std::string why) { return {std::nullopt, std::move(why)}; }
};

std::vector<std::string> nonblank_lines(std::string_view response) {
  std::vector<std::string> out;
  for (const std::string& line : text::split_lines(response)) {
    std::string trimmed = text::trim_copy(line);
    if (!trimmed.empty()) out.push_back(std::move(trimmed));
  }
  return out;
}

/// "VALUE: rest" accessor; returns nullopt when the line has another section
/// name.
std::optional<std::string> section_value(std::string_view line, std::string_view name) {
  if (!text::starts_with(line, name)) return std::nullopt;
  return text::trim_copy(line.substr(name.size()));
}

std::vector<std::string> split_comma_list(std::string_view value) {
  std::vector<std::string> out;
  for (const std::string& part : text::split(value, ',')) {
    std::string trimmed = text::trim_copy(part);
    if (!trimmed.empty()) out.push_back(std::move(trimmed));
  }
  return out;
}

Parsed<AlignedText> parse_alignment(std::string_view response) {
  AlignedText out;
  bool have_text = false;
  bool have_tags = false;
  for (const std::string& line : nonblank_lines(response)) {
    if (auto value = section_value(line, "TEXT:")) {
      if (have_text) return Parsed<AlignedText>::fail("duplicate TEXT line");
      if (value->empty()) return Parsed<AlignedText>::fail("empty TEXT value");
      out.text = *value;
      have_text = true;
    } else if (auto tags = section_value(line, "TAGS:")) {
      if (have_tags) return Parsed<AlignedText>::fail("duplicate TAGS line");
      out.tags = split_comma_list(*tags);
      have_tags = true;
    } else {
      return Parsed<AlignedText>::fail("unexpected line \"" + line + "\"");
    }
  }
  if (!have_text) return Parsed<AlignedText>::fail("missing TEXT line");
  return Parsed<AlignedText>::ok(std::move(out));
}

Parsed<std::vector<std::string>> parse_terms(std::string_view response, std::size_t cap) {
  std::optional<std::string> terms_value;
  for (const std::string& line : nonblank_lines(response)) {
    if (auto value = section_value(line, "TERMS:")) {
      if (terms_value) return Parsed<std::vector<std::string>>::fail("duplicate TERMS line");
      terms_value = *value;
    } else {
      return Parsed<std::vector<std::string>>::fail("unexpected line \"" + line + "\"");
    }
  }
  if (!terms_value) return Parsed<std::vector<std::string>>::fail("missing TERMS line");

  std::vector<std::string> terms;
  for (std::string& term : split_comma_list(*terms_value)) {
    if (std::find(terms.begin(), terms.end(), term) == terms.end()) {
      terms.push_back(std::move(term));
    }
  }
  if (terms.empty()) return Parsed<std::vector<std::string>>::fail("empty term list");
  if (terms.size() > cap) terms.resize(cap);
  return Parsed<std::vector<std::string>>::ok(std::move(terms));
}

Parsed<std::vector<InsightItem>> parse_insights(std::string_view response) {
  using Out = Parsed<std::vector<InsightItem>>;
  const std::vector<std::string> lines = nonblank_lines(response);
  if (lines.size() == 1 && lines[0] == "NO_INSIGHTS") return Out::ok({});
  if (lines.empty()) return Out::fail("empty response");

  std::vector<InsightItem> items;
  for (std::size_t i = 0; i < lines.size(); i += 2) {
    auto space = section_value(lines[i], "SPACE:");
    if (!space) return Out::fail("expected SPACE line, got \"" + lines[i] + "\"");
    InsightItem item;
    if (*space == "general") {
      item.target_space = SpaceKind::general;
    } else if (*space == "prompt") {
      item.target_space = SpaceKind::prompt;
    } else {
      return Out::fail("unknown space token \"" + *space + "\"");
    }
    if (i + 1 >= lines.size()) return Out::fail("SPACE line without TEXT line");
    auto text_value = section_value(lines[i + 1], "TEXT:");
    if (!text_value || text_value->empty()) {
      return Out::fail("expected non-empty TEXT line, got \"" + lines[i + 1] + "\"");
    }
    item.text = *text_value;
    items.push_back(std::move(item));
  }
  return Out::ok(std::move(items));
}

Parsed<std::vector<std::string>> parse_prune(std::string_view response) {
  using Out = Parsed<std::vector<std::string>>;
  const std::vector<std::string> lines = nonblank_lines(response);
  if (lines.empty()) return Out::fail("empty response");

  std::vector<std::string> kept;
  for (const std::string& line : lines) {
    std::optional<std::string> value;
    bool keep_value = false;
    if ((value = section_value(line, "KEEP:")) || (value = section_value(line, "REWRITE:"))) {
      keep_value = true;
    } else if (!(value = section_value(line, "DROP:"))) {
      return Out::fail("expected KEEP:/DROP:/REWRITE: line, got \"" + line + "\"");
    }
    if (value->empty()) return Out::fail("empty value in line \"" + line + "\"");
    if (keep_value) kept.push_back(*value);
  }
  return Out::ok(std::move(kept));
}

Parsed<ComparisonResult> parse_judgement(std::string_view response) {
  using Out = Parsed<ComparisonResult>;
  std::optional<std::string> verdict;
  std::optional<std::string> detail;
  for (const std::string& line : nonblank_lines(response)) {
    if (auto v = section_value(line, "VERDICT:")) {
      if (verdict) return Out::fail("duplicate VERDICT line");
      verdict = *v;
    } else if (auto d = section_value(line, "DETAIL:")) {
      if (detail) return Out::fail("duplicate DETAIL line");
      detail = *d;
    } else {
      return Out::fail("unexpected line \"" + line + "\"");
    }
  }
  if (!verdict) return Out::fail("missing VERDICT line");

  ComparisonResult result;
  if (*verdict == "SUCCESS") {
    result.verdict = Verdict::success;
  } else if (*verdict == "FAILURE") {
    result.verdict = Verdict::failure;
  } else {
    return Out::fail("unknown verdict token \"" + *verdict + "\"");
  }
  result.detail = detail.value_or("");
  if (result.verdict == Verdict::failure && result.detail.empty()) {
    return Out::fail("FAILURE verdict requires a non-empty DETAIL line");
  }
  return Out::ok(std::move(result));
}

Parsed<std::string> parse_nonempty(std::string_view response) {
  std::string trimmed = text::trim_copy(response);
  if (trimmed.empty()) return Parsed<std::string>::fail("empty response");
  return Parsed<std::string>::ok(std::move(trimmed));
}

/// Rethrows backend failures under the per-role error type. Script
/// exhaustion stays untouched: it signals a broken fixture, not a backend
/// outage.
template <typename RoleError, typename Fn>
auto with_role_errors(const char* op_name, Fn&& fn) {
  try {
    return fn();
  } catch (const ScriptExhaustedError&) {
    throw;
  } catch (const RepairFailure& failure) {
    throw RoleError(std::string(op_name) + ": " + failure.message);
  } catch (const BackendError& error) {
    throw RoleError(std::string(op_name) + ": backend failure: " + error.what());
  }
}

}  // namespace

std::string describe_mismatch(std::string_view output, std::string_view expected) {
  std::string detail;
  if (output.size() != expected.size()) {
    detail = "output length " + std::to_string(output.size()) + " differs from expected length " +
             std::to_string(expected.size());
  }
  std::vector<std::size_t> positions;
  const std::size_t common = std::min(output.size(), expected.size());
  for (std::size_t i = 0; i < common && positions.size() < 10; ++i) {
    if (output[i] != expected[i]) positions.push_back(i + 1);
  }
  if (!positions.empty()) {
    if (!detail.empty()) detail += "; ";
    detail += "mismatch at positions ";
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (i) detail += ", ";
      detail += std::to_string(positions[i]);
    }
  }
  detail += "; expected \"" + std::string(expected) + "\", got \"" + std::string(output) + "\"";
  return detail;
}

AgentSuite::AgentSuite(Reasoner& reasoner, TemplateSet templates, GoalSet goals, AgentConfig config)
    : reasoner_(reasoner), templates_(std::move(templates)), goals_(std::move(goals)),
      config_(config) {
  goals_.validate();
}

template <typename T, typename Parser>
T AgentSuite::call_with_repair(AgentRole role, const std::string& request, Parser&& parser,
                               std::string_view format_reminder) const {
  std::string current = request;
  std::string last_error;
  for (int attempt = 0; attempt <= config_.repair_retries; ++attempt) {
    const std::string response = reasoner_.complete(role, current, attempt);
    auto parsed = parser(response);
    if (parsed.value) return std::move(*parsed.value);
    last_error = parsed.error;
    current = request + "\n\nYour previous reply could not be parsed (" + parsed.error +
              "). Respond again using exactly this format:\n" + std::string(format_reminder);
  }
  throw RepairFailure{"unparseable response after " + std::to_string(config_.repair_retries) +
                      " repair retries (" + last_error + ")"};
}

std::string AgentSuite::render_knowledge_list(const std::vector<std::string>& items,
                                              bool capped) const {
  if (items.empty()) return "(none)";
  std::string out;
  const std::size_t limit =
      capped ? std::min(items.size(), config_.max_knowledge_items) : items.size();
  for (std::size_t i = 0; i < limit; ++i) {
    if (i) out.push_back('\n');
    out += "- " + items[i];
  }
  return out;
}

AlignedText AgentSuite::align(std::string_view raw, const GoalSet& goals) const {
  if (text::trim(raw).empty()) throw InvalidInputError("align: raw text is empty");
  const std::string request = render_template(templates_.for_role(AgentRole::Alignment),
                                              {{"goal_main", goals.main_goal},
                                               {"goal_storage", goals.storage_goal},
                                               {"task_input", std::string(raw)}});
  return with_role_errors<AlignmentError>("align", [&] {
    return call_with_repair<AlignedText>(AgentRole::Alignment, request, parse_alignment,
                                         "TEXT: <aligned knowledge>\nTAGS: <tag>, <tag> (optional)");
  });
}

std::vector<std::string> AgentSuite::search_terms(std::string_view query,
                                                  const GoalSet& goals) const {
  if (text::trim(query).empty()) throw InvalidInputError("search_terms: query is empty");
  const std::string request = render_template(templates_.for_role(AgentRole::SearchTerms),
                                              {{"goal_main", goals.main_goal},
                                               {"goal_retrieval", goals.retrieval_goal},
                                               {"task_input", std::string(query)}});
  return with_role_errors<SearchError>("search_terms", [&] {
    return call_with_repair<std::vector<std::string>>(
        AgentRole::SearchTerms, request,
        [](std::string_view response) { return parse_terms(response, 8); },
        "TERMS: <term>, <term>, ...");
  });
}

std::string AgentSuite::generate_prompt(std::string_view task_descriptor,
                                        const std::vector<std::string>& prompt_knowledge) const {
  const std::string request =
      render_template(templates_.for_role(AgentRole::MetaPrompt),
                      {{"goal_main", goals_.main_goal},
                       {"task_input", std::string(task_descriptor)},
                       {"prompt_knowledge", render_knowledge_list(prompt_knowledge)}});
  return with_role_errors<PromptGenerationError>("generate_prompt", [&] {
    return call_with_repair<std::string>(AgentRole::MetaPrompt, request, parse_nonempty,
                                         "<a single non-empty prompt>");
  });
}

std::string AgentSuite::execute_operational(std::string_view task_input,
                                            const std::vector<std::string>& general_knowledge,
                                            std::string_view prompt) const {
  if (text::trim(prompt).empty()) {
    throw InvalidInputError("execute_operational: prompt is empty");
  }
  const std::string request =
      render_template(templates_.for_role(AgentRole::Operational),
                      {{"goal_main", goals_.main_goal},
                       {"general_knowledge", render_knowledge_list(general_knowledge)},
                       {"generated_prompt", std::string(prompt)},
                       {"task_input", std::string(task_input)}});
  return with_role_errors<ExecutionError>("execute_operational", [&] {
    return text::trim_copy(reasoner_.complete(AgentRole::Operational, request));
  });
}

ComparisonResult AgentSuite::compare_response(std::string_view output,
                                              const std::optional<std::string>& expected,
                                              std::string_view task_descriptor,
                                              ComparisonMode mode) const {
  if (mode == ComparisonMode::deterministic) {
    if (!expected) {
      throw InvalidInputError("compare_response: deterministic mode requires an expected output");
    }
    const std::string got = text::trim_copy(output);
    const std::string want = text::trim_copy(*expected);
    if (got == want) return {Verdict::success, "exact match"};
    return {Verdict::failure, describe_mismatch(got, want)};
  }

  const std::string request =
      render_template(templates_.for_role(AgentRole::ResponseComparison),
                      {{"goal_main", goals_.main_goal},
                       {"task_input", std::string(task_descriptor)},
                       {"output", std::string(output)},
                       {"expected", expected ? *expected : "(not provided)"}});
  return with_role_errors<ComparisonError>("compare_response", [&] {
    return call_with_repair<ComparisonResult>(AgentRole::ResponseComparison, request,
                                              parse_judgement,
                                              "VERDICT: SUCCESS or FAILURE\nDETAIL: <explanation>");
  });
}

std::string AgentSuite::feedback(const ComparisonResult& comparison, std::string_view output,
                                 std::string_view task_descriptor) const {
  const AgentRole role =
      comparison.ok() ? AgentRole::PositiveFeedback : AgentRole::NegativeFeedback;
  const std::string comparison_text =
      std::string(comparison.ok() ? "success" : "failure") +
      (comparison.detail.empty() ? "" : ": " + comparison.detail);
  const std::string request = render_template(templates_.for_role(role),
                                              {{"goal_main", goals_.main_goal},
                                               {"task_input", std::string(task_descriptor)},
                                               {"comparison", comparison_text},
                                               {"output", std::string(output)}});
  return with_role_errors<FeedbackError>("feedback", [&] {
    return call_with_repair<std::string>(role, request, parse_nonempty,
                                         "<non-empty feedback text>");
  });
}

std::vector<InsightItem> AgentSuite::extract_insights(std::string_view feedback_text,
                                                      std::string_view task_descriptor,
                                                      std::string_view output) const {
  if (text::trim(feedback_text).empty()) {
    throw InvalidInputError("extract_insights: feedback text is empty");
  }
  const std::string request = render_template(templates_.for_role(AgentRole::KnowledgeInsight),
                                              {{"goal_main", goals_.main_goal},
                                               {"task_input", std::string(task_descriptor)},
                                               {"feedback", std::string(feedback_text)},
                                               {"output", std::string(output)}});
  return with_role_errors<InsightError>("extract_insights", [&] {
    return call_with_repair<std::vector<InsightItem>>(
        AgentRole::KnowledgeInsight, request, parse_insights,
        "SPACE: general or prompt\nTEXT: <insight>\n(repeat per item, or reply NO_INSIGHTS)");
  });
}

std::vector<std::string> AgentSuite::prune_texts(const std::vector<std::string>& feedback_batch,
                                                 const std::vector<std::string>& existing,
                                                 const GoalSet& goals) const {
  const std::string request =
      render_template(templates_.for_role(AgentRole::Pruning),
                      {{"goal_main", goals.main_goal},
                       {"goal_storage", goals.storage_goal},
                       {"feedback", render_knowledge_list(feedback_batch, /*capped=*/false)},
                       {"general_knowledge", render_knowledge_list(existing, /*capped=*/false)}});
  return with_role_errors<PruningError>("prune_texts", [&] {
    return call_with_repair<std::vector<std::string>>(
        AgentRole::Pruning, request, parse_prune,
        "KEEP: <text> | DROP: <text> | REWRITE: <new text> (one line per item)");
  });
}

AlignerFn AgentSuite::aligner() const {
  return [this](std::string_view raw, const GoalSet& goals) { return align(raw, goals); };
}

TermGeneratorFn AgentSuite::term_generator() const {
  return [this](std::string_view query, const GoalSet& goals) {
    return search_terms(query, goals);
  };
}

PrunerFn AgentSuite::pruner() const {
  return [this](const std::vector<std::string>& feedback_batch,
                const std::vector<std::string>& existing, const GoalSet& goals) {
    return prune_texts(feedback_batch, existing, goals);
  };
}

}  // namespace clu
