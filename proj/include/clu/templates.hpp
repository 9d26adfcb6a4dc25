#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clu/roles.hpp"

namespace clu {

/// The full placeholder vocabulary usable inside template assets.
inline constexpr std::string_view kPlaceholderNames[] = {
    "goal_main",        "goal_retrieval", "goal_storage",     "task_input",
    "general_knowledge", "prompt_knowledge", "generated_prompt", "output",
    "expected",         "comparison",     "feedback",
};

/// One role's request template. `{name}` references a placeholder; literal
/// braces are not supported. Operational templates must wrap {task_input} in
/// the fixed input delimiters exactly once.
struct PromptTemplate {
  AgentRole role = AgentRole::Operational;
  std::string template_text;
};

using Bindings = std::map<std::string, std::string>;

/// Deterministic substitution. Throws TemplateError when a referenced
/// placeholder has no binding.
std::string render_template(const PromptTemplate& tmpl, const Bindings& bindings);

/// Validates placeholder names (and the Operational delimiter rule).
/// Throws TemplateError on violations.
void validate_template(const PromptTemplate& tmpl);

/// The nine role templates, loaded from `<dir>/<role>.txt`. A missing file
/// raises a startup TemplateError naming the role.
class TemplateSet {
 public:
  static TemplateSet load(const std::filesystem::path& dir);

  const PromptTemplate& for_role(AgentRole role) const;

 private:
  std::map<AgentRole, PromptTemplate> templates_;
};

}  // namespace clu
