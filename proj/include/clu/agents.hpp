#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clu/knowledge_store.hpp"
#include "clu/reasoner.hpp"
#include "clu/templates.hpp"

namespace clu {

enum class Verdict { success, failure };

struct ComparisonResult {
  Verdict verdict = Verdict::failure;
  std::string detail;  // non-empty on failure

  bool ok() const { return verdict == Verdict::success; }
};

enum class ComparisonMode { deterministic, judged };

/// One routed knowledge item extracted from feedback.
struct InsightItem {
  std::string text;
  SpaceKind target_space = SpaceKind::general;
};

struct AgentConfig {
  int repair_retries = 2;            // R: repair attempts after the first try
  std::size_t max_knowledge_items = 10;  // interpolation cap per template
};

/// Role-specific agents over an abstract reasoner: prompt rendering on the
/// way in, strict line-oriented parsing on the way out, with at most R
/// repair retries per call. Stateless between calls apart from the
/// reasoner's append-only exchange log.
class AgentSuite {
 public:
  AgentSuite(Reasoner& reasoner, TemplateSet templates, GoalSet goals, AgentConfig config = {});

  /// Knowledge Alignment Agent: raw text -> (aligned text, tags), parsed
  /// from TEXT:/TAGS: lines.
  AlignedText align(std::string_view raw, const GoalSet& goals) const;

  /// Search agent: 1..8 deduplicated search terms from a TERMS: line.
  std::vector<std::string> search_terms(std::string_view query, const GoalSet& goals) const;

  /// Meta-Prompt Agent. With empty knowledge the request carries only the
  /// task descriptor and main goal (cold start).
  std::string generate_prompt(std::string_view task_descriptor,
                              const std::vector<std::string>& prompt_knowledge) const;

  /// Operational Agent. The rendered request embeds task_input between the
  /// fixed input delimiters. Throws InvalidInputError on an empty prompt.
  std::string execute_operational(std::string_view task_input,
                                  const std::vector<std::string>& general_knowledge,
                                  std::string_view prompt) const;

  /// Deterministic mode: trimmed case-sensitive equality, no reasoner call;
  /// the failure detail names the mismatch positions. Judged mode: VERDICT:
  /// SUCCESS|FAILURE plus DETAIL: from the ResponseComparison agent.
  ComparisonResult compare_response(std::string_view output,
                                    const std::optional<std::string>& expected,
                                    std::string_view task_descriptor, ComparisonMode mode) const;

  /// Routes to exactly one of the PositiveFeedback / NegativeFeedback
  /// agents and returns its (non-empty) feedback text.
  std::string feedback(const ComparisonResult& comparison, std::string_view output,
                       std::string_view task_descriptor) const;

  /// Knowledge Insight Agent: SPACE:/TEXT: item pairs, or NO_INSIGHTS.
  std::vector<InsightItem> extract_insights(std::string_view feedback_text,
                                            std::string_view task_descriptor,
                                            std::string_view output) const;

  /// Pruning Agent: KEEP:/DROP:/REWRITE: lines mapped to the replacement
  /// list (KEEP and REWRITE values, in order).
  std::vector<std::string> prune_texts(const std::vector<std::string>& feedback_batch,
                                       const std::vector<std::string>& existing,
                                       const GoalSet& goals) const;

  // Adapters for the knowledge-store operations.
  AlignerFn aligner() const;
  TermGeneratorFn term_generator() const;
  PrunerFn pruner() const;

  Reasoner& reasoner() const { return reasoner_; }
  const GoalSet& goals() const { return goals_; }
  const AgentConfig& config() const { return config_; }

  /// Renders knowledge items as "- item" lines, capped at
  /// max_knowledge_items; "(none)" when empty.
  std::string render_knowledge_list(const std::vector<std::string>& items, bool capped = true) const;

 private:
  template <typename T, typename Parser>
  T call_with_repair(AgentRole role, const std::string& request, Parser&& parser,
                     std::string_view format_reminder) const;

  Reasoner& reasoner_;
  TemplateSet templates_;
  GoalSet goals_;
  AgentConfig config_;
};

/// Human-readable mismatch description used by deterministic comparison;
/// positions are 1-based.
std::string describe_mismatch(std::string_view output, std::string_view expected);

}  // namespace clu
