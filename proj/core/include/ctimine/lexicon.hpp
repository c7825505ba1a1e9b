#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctimine/aho_corasick.hpp"

namespace ctimine::lexicon {

enum class HitKind : std::uint8_t { keyword, regex, software };

std::string_view to_string(HitKind kind) noexcept;
std::optional<HitKind> parse_hit_kind(std::string_view text) noexcept;

// Keyword and software hits span token indices [begin, end); regex hits span
// byte offsets [begin, end) into the shadow text.
struct Hit {
  HitKind kind = HitKind::keyword;
  std::string term;
  std::size_t begin = 0;
  std::size_t end = 0;

  auto operator<=>(const Hit&) const = default;
};

nlohmann::json to_json(const Hit& hit);
Hit hit_from_json(const nlohmann::json& record);

struct FuzzParams {
  // Keywords at most this long match exactly.
  std::size_t min_len = 5;
  double threshold = 0.80;
  double anchor_ratio = 0.80;

  // ceil(anchor_ratio * keyword_length)
  std::size_t anchor_length(std::size_t keyword_length) const noexcept;
  // Largest edit distance d with 1 - d / max_len >= threshold.
  std::size_t max_distance(std::size_t max_len) const noexcept;

  void validate() const;
};

// Prefix-anchored fuzzy comparison of a lowercase keyword with a lowercase token.
bool fuzzy_match(std::string_view keyword, std::string_view token, const FuzzParams& params = {});

// Matches whole tokens and consecutive token runs against a fixed phrase list
// in a single automaton pass.
class PhraseMatcher {
 public:
  struct Phrase {
    std::vector<std::string> tokens;
    std::uint32_t tag = 0;
  };
  struct Match {
    std::uint32_t phrase = 0;
    std::size_t begin = 0;  // token indices
    std::size_t end = 0;
  };

  PhraseMatcher() = default;
  explicit PhraseMatcher(std::vector<Phrase> phrases);

  const std::vector<Phrase>& phrases() const noexcept { return phrases_; }

  // Tokens must not contain the 0x1f unit separator.
  std::vector<Match> match(std::span<const std::string> tokens) const;

 private:
  std::vector<Phrase> phrases_;
  AhoCorasick automaton_;
};

class KeywordDictionary {
 public:
  KeywordDictionary() = default;
  // Lowercases and deduplicates; throws DataError for an empty list or
  // entries containing whitespace.
  explicit KeywordDictionary(std::vector<std::string> keywords, FuzzParams params = {});

  const std::vector<std::string>& keywords() const noexcept { return keywords_; }
  const FuzzParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return keywords_.size(); }

  // Exact hits come from the automaton; fuzzy candidates are only the keywords
  // whose anchor is a prefix of the token. Sorted by (token index, term).
  std::vector<Hit> scan(std::span<const std::string> tokens) const;

  // Fuzzy part only, for callers that run their own exact pass.
  void scan_fuzzy(std::span<const std::string> tokens, std::vector<Hit>& out) const;

 private:
  struct TrieNode {
    std::vector<std::pair<char, std::uint32_t>> children;
    std::vector<std::uint32_t> keywords;  // keywords whose anchor ends here
  };

  void build_anchor_trie();

  std::vector<std::string> keywords_;
  FuzzParams params_;
  PhraseMatcher exact_;
  std::vector<TrieNode> trie_;
};

KeywordDictionary parse_keyword_dictionary(std::string_view content, FuzzParams params = {});
KeywordDictionary load_keyword_dictionary(const std::filesystem::path& path, FuzzParams params = {});
KeywordDictionary default_keyword_dictionary(FuzzParams params = {});

struct RegexEntry {
  std::string name;
  std::string pattern;
  std::string origin;  // "file:line" for error messages
};

class TechnicalDictionary {
 public:
  TechnicalDictionary();
  // Throws DataError when a pattern fails to compile.
  TechnicalDictionary(std::vector<RegexEntry> regexes, std::vector<std::string> software_names);
  ~TechnicalDictionary();
  TechnicalDictionary(TechnicalDictionary&&) noexcept;
  TechnicalDictionary& operator=(TechnicalDictionary&&) noexcept;

  const std::vector<RegexEntry>& regexes() const noexcept { return regexes_; }
  // Lowercased, sorted, each at least kMinSoftwareLength characters.
  const std::vector<std::string>& software_names() const noexcept { return software_; }
  std::size_t rejected_software() const noexcept { return rejected_software_; }

  // All non-overlapping leftmost matches per pattern, ordered by
  // (begin, pattern order).
  std::vector<Hit> scan_regex(std::string_view text) const;

  // Whole-token (or consecutive token run) equality only.
  std::vector<Hit> scan_software(std::span<const std::string> tokens) const;

  static constexpr std::size_t kMinSoftwareLength = 4;

 private:
  struct Compiled;

  std::vector<RegexEntry> regexes_;
  std::vector<std::string> software_;
  std::size_t rejected_software_ = 0;
  std::unique_ptr<Compiled> compiled_;
  PhraseMatcher software_matcher_;
};

std::vector<RegexEntry> parse_regex_lines(std::string_view content, std::string_view origin);
std::vector<std::string> parse_software_lines(std::string_view content);

TechnicalDictionary load_technical_dictionary(const std::filesystem::path& regex_path,
                                              const std::filesystem::path& software_path);
TechnicalDictionary default_technical_dictionary();

// Both dictionaries plus a combined automaton so keyword and software exact
// matching share one pass over the tokens.
class Lexicon {
 public:
  Lexicon(KeywordDictionary keywords, TechnicalDictionary technical);

  const KeywordDictionary& keywords() const noexcept { return keywords_; }
  const TechnicalDictionary& technical() const noexcept { return technical_; }

  // Keyword, software and regex hits, sorted.
  std::vector<Hit> scan(std::span<const std::string> tokens, std::string_view shadow_text) const;

 private:
  KeywordDictionary keywords_;
  TechnicalDictionary technical_;
  PhraseMatcher combined_;
};

}  // namespace ctimine::lexicon
