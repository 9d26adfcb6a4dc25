#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace clu::text {

/// Strips leading/trailing ASCII whitespace.
std::string_view trim(std::string_view s);

inline std::string trim_copy(std::string_view s) { return std::string(trim(s)); }

/// ASCII lowercasing; bytes outside A-Z pass through.
std::string to_lower(std::string_view s);

/// Splits on a single-character separator. Adjacent separators yield empty
/// fields (callers that forbid them must check).
std::vector<std::string> split(std::string_view s, char sep);

/// Splits into lines, accepting both \n and \r\n.
std::vector<std::string> split_lines(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with(std::string_view s, std::string_view prefix);

/// True iff non-empty and every byte is A-Za-z.
bool is_alphabetic_word(std::string_view s);

/// 64-bit FNV-1a over the bytes of `s`. Stable across platforms; used
/// anywhere a reproducible text hash is needed.
std::uint64_t fnv1a64(std::string_view s);

}  // namespace clu::text
