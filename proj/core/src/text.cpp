#include "ctimine/text.hpp"

#include <fstream>
#include <sstream>

#include "ctimine/bundled.hpp"
#include "ctimine/common.hpp"

namespace ctimine::text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = to_lower_ascii(c);
  return out;
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_ascii_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_ascii_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string_view strip_punct_edges(std::string_view s) noexcept {
  while (!s.empty() && is_ascii_punct(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_punct(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  for (auto piece : split_whitespace(s)) {
    auto core = strip_punct_edges(piece);
    if (!core.empty()) tokens.emplace_back(core);
  }
  return tokens;
}

std::vector<std::string> read_list_lines(std::string_view content) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    auto line = trim(content.substr(pos, nl - pos));
    if (!line.empty() && line.front() != '#') out.emplace_back(line);
    pos = nl + 1;
  }
  return out;
}

namespace {
WordSet make_set(std::string_view content) {
  WordSet set;
  for (auto& w : read_list_lines(content)) set.insert(to_lower(w));
  return set;
}
}  // namespace

const WordSet& default_stopwords() {
  static const WordSet set = make_set(bundled::stopwords());
  return set;
}

WordSet load_stopwords(const std::string& path) { return make_set(read_file(path)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace ctimine::text
