#include "clu/templates.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "clu/errors.hpp"

namespace clu {

namespace {

bool known_placeholder(std::string_view name) {
  return std::find(std::begin(kPlaceholderNames), std::end(kPlaceholderNames), name) !=
         std::end(kPlaceholderNames);
}

/// Calls fn(name) for each placeholder reference, fn(literal) is implicit.
template <typename Fn>
void scan_placeholders(const std::string& text, std::string_view where, Fn&& fn) {
  std::size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string::npos) {
    const std::size_t close = text.find('}', pos);
    if (close == std::string::npos) {
      throw TemplateError(std::string(where) + ": unterminated placeholder");
    }
    fn(std::string_view(text).substr(pos + 1, close - pos - 1), pos, close);
    pos = close + 1;
  }
}

}  // namespace

void validate_template(const PromptTemplate& tmpl) {
  const std::string where = std::string(to_string(tmpl.role)) + " template";
  if (tmpl.template_text.empty()) throw TemplateError(where + ": empty template text");

  scan_placeholders(tmpl.template_text, where, [&](std::string_view name, std::size_t, std::size_t) {
    if (!known_placeholder(name)) {
      throw TemplateError(where + ": unknown placeholder {" + std::string(name) + "}");
    }
  });

  if (tmpl.role == AgentRole::Operational) {
    const std::string wrapped =
        std::string(kInputOpen) + "{task_input}" + std::string(kInputClose);
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = tmpl.template_text.find(wrapped, pos)) != std::string::npos) {
      ++count;
      pos += wrapped.size();
    }
    std::size_t bare = 0;
    pos = 0;
    while ((pos = tmpl.template_text.find("{task_input}", pos)) != std::string::npos) {
      ++bare;
      pos += 12;
    }
    if (count != 1 || bare != 1) {
      throw TemplateError(
          "operational template must contain {task_input} exactly once, wrapped in " +
          std::string(kInputOpen) + "..." + std::string(kInputClose));
    }
  }
}

std::string render_template(const PromptTemplate& tmpl, const Bindings& bindings) {
  std::string out;
  out.reserve(tmpl.template_text.size());
  std::size_t cursor = 0;
  scan_placeholders(tmpl.template_text, to_string(tmpl.role),
                    [&](std::string_view name, std::size_t open, std::size_t close) {
                      out += tmpl.template_text.substr(cursor, open - cursor);
                      auto it = bindings.find(std::string(name));
                      if (it == bindings.end()) {
                        throw TemplateError(std::string(to_string(tmpl.role)) +
                                            " template: no binding for {" + std::string(name) +
                                            "}");
                      }
                      out += it->second;
                      cursor = close + 1;
                    });
  out += tmpl.template_text.substr(cursor);
  return out;
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
  TemplateSet set;
  std::vector<std::string> missing;
  for (AgentRole role : kAllRoles) {
    const std::filesystem::path file = dir / (std::string(to_string(role)) + ".txt");
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      missing.push_back(std::string(to_string(role)));
      continue;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    PromptTemplate tmpl{role, buffer.str()};
    validate_template(tmpl);
    set.templates_.emplace(role, std::move(tmpl));
  }
  if (!missing.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < missing.size(); ++i) {
      if (i) joined += ", ";
      joined += missing[i];
    }
    throw TemplateError("template directory " + dir.string() +
                        " is missing templates for: " + joined);
  }
  return set;
}

const PromptTemplate& TemplateSet::for_role(AgentRole role) const {
  return templates_.at(role);
}

}  // namespace clu
