#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ctimine::text {

inline bool is_ascii_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}
inline bool is_ascii_alpha(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool is_ascii_digit(char c) noexcept { return c >= '0' && c <= '9'; }
inline bool is_ascii_punct(char c) noexcept {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}
inline char to_lower_ascii(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s) noexcept;

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string_view> split_whitespace(std::string_view s);

// Removes leading and trailing ASCII punctuation.
std::string_view strip_punct_edges(std::string_view s) noexcept;

// Whitespace tokenization with punctuation stripped from token edges; tokens
// that are pure punctuation disappear.
std::vector<std::string> tokenize(std::string_view s);

// Parses a line-oriented list: trims lines, skips blanks and "#" comments.
std::vector<std::string> read_list_lines(std::string_view content);

using WordSet = std::unordered_set<std::string>;

// The bundled English stop-word list.
const WordSet& default_stopwords();

// Loads a stop-word file (same layout as the bundled list), lowercasing entries.
WordSet load_stopwords(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace ctimine::text
