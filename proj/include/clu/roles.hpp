#pragma once

#include <string_view>

namespace clu {

/// Every named agent of the engine. Each reasoner exchange carries exactly
/// one role.
enum class AgentRole {
  Operational,
  MetaPrompt,
  Alignment,
  SearchTerms,
  Pruning,
  ResponseComparison,
  PositiveFeedback,
  NegativeFeedback,
  KnowledgeInsight,
};

inline constexpr AgentRole kAllRoles[] = {
    AgentRole::Operational,       AgentRole::MetaPrompt,       AgentRole::Alignment,
    AgentRole::SearchTerms,       AgentRole::Pruning,          AgentRole::ResponseComparison,
    AgentRole::PositiveFeedback,  AgentRole::NegativeFeedback, AgentRole::KnowledgeInsight,
};

std::string_view to_string(AgentRole role);

/// Throws ParseError for an unknown token.
AgentRole role_from_string(std::string_view token);

// Fixed markers wrapping the task input inside Operational requests. Chosen
// to be improbable in natural sentences and trivially searchable.
inline constexpr std::string_view kInputOpen = "<<INPUT>>";
inline constexpr std::string_view kInputClose = "<</INPUT>>";

}  // namespace clu
