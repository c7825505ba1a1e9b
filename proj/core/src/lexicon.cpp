#include "ctimine/lexicon.hpp"

#include <algorithm>
#include <cmath>

#include <boost/regex.hpp>

#include "ctimine/bundled.hpp"
#include "ctimine/common.hpp"
#include "ctimine/levenshtein.hpp"
#include "ctimine/text.hpp"

namespace ctimine::lexicon {

namespace {
constexpr char kSeparator = '\x1f';

bool by_position(const Hit& a, const Hit& b) {
  return std::tie(a.kind, a.begin, a.end, a.term) < std::tie(b.kind, b.begin, b.end, b.term);
}
}  // namespace

std::string_view to_string(HitKind kind) noexcept {
  switch (kind) {
    case HitKind::keyword: return "keyword";
    case HitKind::regex: return "regex";
    case HitKind::software: return "software";
  }
  return "keyword";
}

std::optional<HitKind> parse_hit_kind(std::string_view text) noexcept {
  if (text == "keyword") return HitKind::keyword;
  if (text == "regex") return HitKind::regex;
  if (text == "software") return HitKind::software;
  return std::nullopt;
}

nlohmann::json to_json(const Hit& hit) {
  return {{"kind", to_string(hit.kind)}, {"term", hit.term}, {"span", {hit.begin, hit.end}}};
}

Hit hit_from_json(const nlohmann::json& record) {
  Hit hit;
  auto kind = parse_hit_kind(record.at("kind").get<std::string>());
  if (!kind) throw DataError("unknown hit kind");
  hit.kind = *kind;
  hit.term = record.at("term").get<std::string>();
  const auto& span = record.at("span");
  hit.begin = span.at(0).get<std::size_t>();
  hit.end = span.at(1).get<std::size_t>();
  if (hit.end <= hit.begin) throw DataError("empty hit span");
  return hit;
}

// ---------------------------------------------------------------------------
// Fuzzy matching

std::size_t FuzzParams::anchor_length(std::size_t keyword_length) const noexcept {
  const double raw = std::ceil(anchor_ratio * static_cast<double>(keyword_length) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 0.0)), 1, keyword_length);
}

std::size_t FuzzParams::max_distance(std::size_t max_len) const noexcept {
  std::size_t d = 0;
  while (d < max_len &&
         1.0 - static_cast<double>(d + 1) / static_cast<double>(max_len) >= threshold) {
    ++d;
  }
  return d;
}

void FuzzParams::validate() const {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw ConfigError("fuzz threshold must be in (0, 1]");
  if (!(anchor_ratio > 0.0 && anchor_ratio <= 1.0)) throw ConfigError("anchor ratio must be in (0, 1]");
}

bool fuzzy_match(std::string_view keyword, std::string_view token, const FuzzParams& params) {
  if (keyword.size() <= params.min_len) return token == keyword;
  const std::size_t anchor = params.anchor_length(keyword.size());
  if (token.size() < anchor || token.compare(0, anchor, keyword.substr(0, anchor)) != 0) return false;
  const std::size_t limit = params.max_distance(std::max(keyword.size(), token.size()));
  return levenshtein_bounded(keyword, token, limit) <= limit;
}

// ---------------------------------------------------------------------------
// Phrase matcher

PhraseMatcher::PhraseMatcher(std::vector<Phrase> phrases) : phrases_(std::move(phrases)) {
  std::vector<std::string> patterns;
  patterns.reserve(phrases_.size());
  for (const auto& phrase : phrases_) {
    std::string p(1, kSeparator);
    for (const auto& t : phrase.tokens) {
      p += t;
      p.push_back(kSeparator);
    }
    patterns.push_back(std::move(p));
  }
  automaton_ = AhoCorasick(patterns);
}

std::vector<PhraseMatcher::Match> PhraseMatcher::match(std::span<const std::string> tokens) const {
  std::vector<Match> matches;
  if (phrases_.empty() || tokens.empty()) return matches;
  std::string joined(1, kSeparator);
  // separators[j] is the offset of the separator that follows token j-1.
  std::vector<std::size_t> separators{0};
  for (const auto& t : tokens) {
    joined += t;
    separators.push_back(joined.size());
    joined.push_back(kSeparator);
  }
  automaton_.scan(joined, [&](const AhoCorasick::Match& m) {
    const auto it = std::lower_bound(separators.begin(), separators.end(), m.end - 1);
    const auto last = static_cast<std::size_t>(it - separators.begin());
    const auto width = phrases_[m.pattern].tokens.size();
    matches.push_back({m.pattern, last - width, last});
  });
  return matches;
}

// ---------------------------------------------------------------------------
// Keyword dictionary

KeywordDictionary::KeywordDictionary(std::vector<std::string> keywords, FuzzParams params)
    : params_(params) {
  params_.validate();
  for (auto& k : keywords) {
    auto trimmed = text::trim(k);
    if (trimmed.empty()) continue;
    for (char c : trimmed) {
      if (text::is_ascii_space(c)) throw DataError("keyword contains whitespace: \"" + k + "\"");
    }
    keywords_.push_back(text::to_lower(trimmed));
  }
  std::sort(keywords_.begin(), keywords_.end());
  keywords_.erase(std::unique(keywords_.begin(), keywords_.end()), keywords_.end());
  if (keywords_.empty()) throw DataError("keyword dictionary is empty");

  std::vector<PhraseMatcher::Phrase> phrases;
  for (std::uint32_t i = 0; i < keywords_.size(); ++i) phrases.push_back({{keywords_[i]}, i});
  exact_ = PhraseMatcher(std::move(phrases));
  build_anchor_trie();
}

void KeywordDictionary::build_anchor_trie() {
  trie_.assign(1, TrieNode{});
  for (std::uint32_t i = 0; i < keywords_.size(); ++i) {
    const auto& k = keywords_[i];
    if (k.size() <= params_.min_len) continue;
    const std::size_t anchor = params_.anchor_length(k.size());
    std::uint32_t node = 0;
    for (std::size_t c = 0; c < anchor; ++c) {
      auto& children = trie_[node].children;
      auto it = std::lower_bound(children.begin(), children.end(), k[c],
                                 [](const auto& e, char ch) { return e.first < ch; });
      if (it == children.end() || it->first != k[c]) {
        const auto next = static_cast<std::uint32_t>(trie_.size());
        children.insert(it, {k[c], next});
        trie_.emplace_back();
        node = next;
      } else {
        node = it->second;
      }
    }
    trie_[node].keywords.push_back(i);
  }
}

void KeywordDictionary::scan_fuzzy(std::span<const std::string> tokens, std::vector<Hit>& out) const {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& token = tokens[i];
    std::uint32_t node = 0;
    for (char c : token) {
      const auto& children = trie_[node].children;
      auto it = std::lower_bound(children.begin(), children.end(), c,
                                 [](const auto& e, char ch) { return e.first < ch; });
      if (it == children.end() || it->first != c) break;
      node = it->second;
      for (auto k : trie_[node].keywords) {
        const auto& keyword = keywords_[k];
        if (token != keyword && fuzzy_match(keyword, token, params_)) {
          out.push_back({HitKind::keyword, keyword, i, i + 1});
        }
      }
    }
  }
}

std::vector<Hit> KeywordDictionary::scan(std::span<const std::string> tokens) const {
  std::vector<Hit> hits;
  for (const auto& m : exact_.match(tokens)) {
    hits.push_back({HitKind::keyword, keywords_[exact_.phrases()[m.phrase].tag], m.begin, m.end});
  }
  scan_fuzzy(tokens, hits);
  std::sort(hits.begin(), hits.end(), by_position);
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

KeywordDictionary parse_keyword_dictionary(std::string_view content, FuzzParams params) {
  return KeywordDictionary(text::read_list_lines(content), params);
}

KeywordDictionary load_keyword_dictionary(const std::filesystem::path& path, FuzzParams params) {
  try {
    return parse_keyword_dictionary(text::read_file(path.string()), params);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

KeywordDictionary default_keyword_dictionary(FuzzParams params) {
  return parse_keyword_dictionary(bundled::keywords(), params);
}

// ---------------------------------------------------------------------------
// Technical dictionary

struct TechnicalDictionary::Compiled {
  std::vector<boost::regex> patterns;
};

TechnicalDictionary::TechnicalDictionary() : compiled_(std::make_unique<Compiled>()) {}
TechnicalDictionary::~TechnicalDictionary() = default;
TechnicalDictionary::TechnicalDictionary(TechnicalDictionary&&) noexcept = default;
TechnicalDictionary& TechnicalDictionary::operator=(TechnicalDictionary&&) noexcept = default;

TechnicalDictionary::TechnicalDictionary(std::vector<RegexEntry> regexes,
                                         std::vector<std::string> software_names)
    : regexes_(std::move(regexes)), compiled_(std::make_unique<Compiled>()) {
  for (const auto& entry : regexes_) {
    try {
      compiled_->patterns.emplace_back(entry.pattern, boost::regex::perl | boost::regex::icase);
    } catch (const boost::regex_error& e) {
      const std::string where = entry.origin.empty() ? entry.name : entry.origin;
      throw DataError(where + ": pattern \"" + entry.name + "\" does not compile: " + e.what());
    }
  }

  for (const auto& raw : software_names) {
    auto name = text::to_lower(text::trim(raw));
    if (name.empty()) continue;
    if (name.size() < kMinSoftwareLength) {
      ++rejected_software_;
      continue;
    }
    software_.push_back(std::move(name));
  }
  std::sort(software_.begin(), software_.end());
  software_.erase(std::unique(software_.begin(), software_.end()), software_.end());

  std::vector<PhraseMatcher::Phrase> phrases;
  for (std::uint32_t i = 0; i < software_.size(); ++i) {
    auto tokens = text::tokenize(software_[i]);
    if (!tokens.empty()) phrases.push_back({std::move(tokens), i});
  }
  software_matcher_ = PhraseMatcher(std::move(phrases));
}

std::vector<Hit> TechnicalDictionary::scan_regex(std::string_view text) const {
  std::vector<std::pair<Hit, std::size_t>> found;
  for (std::size_t p = 0; p < compiled_->patterns.size(); ++p) {
    boost::cregex_iterator it(text.data(), text.data() + text.size(), compiled_->patterns[p]);
    for (; it != boost::cregex_iterator(); ++it) {
      const auto& m = (*it)[0];
      if (m.length() == 0) continue;
      const auto begin = static_cast<std::size_t>(m.first - text.data());
      found.push_back({{HitKind::regex, regexes_[p].name, begin, begin + static_cast<std::size_t>(m.length())}, p});
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.begin, a.second, a.first.end) < std::tie(b.first.begin, b.second, b.first.end);
  });
  std::vector<Hit> hits;
  hits.reserve(found.size());
  for (auto& f : found) hits.push_back(std::move(f.first));
  return hits;
}

std::vector<Hit> TechnicalDictionary::scan_software(std::span<const std::string> tokens) const {
  std::vector<Hit> hits;
  for (const auto& m : software_matcher_.match(tokens)) {
    hits.push_back({HitKind::software, software_[software_matcher_.phrases()[m.phrase].tag], m.begin, m.end});
  }
  std::sort(hits.begin(), hits.end(), by_position);
  return hits;
}

std::vector<RegexEntry> parse_regex_lines(std::string_view content, std::string_view origin) {
  std::vector<RegexEntry> entries;
  std::size_t pos = 0;
  std::size_t number = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    const std::string where = std::string(origin) + ":" + std::to_string(number);
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw DataError(where + ": expected name<TAB>pattern");
    RegexEntry entry{std::string(text::trim(line.substr(0, tab))), std::string(line.substr(tab + 1)), where};
    if (entry.name.empty() || entry.pattern.empty()) throw DataError(where + ": empty name or pattern");
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<std::string> parse_software_lines(std::string_view content) {
  return text::read_list_lines(content);
}

TechnicalDictionary load_technical_dictionary(const std::filesystem::path& regex_path,
                                              const std::filesystem::path& software_path) {
  auto regexes = parse_regex_lines(text::read_file(regex_path.string()), regex_path.string());
  auto software = parse_software_lines(text::read_file(software_path.string()));
  return TechnicalDictionary(std::move(regexes), std::move(software));
}

TechnicalDictionary default_technical_dictionary() {
  return TechnicalDictionary(parse_regex_lines(bundled::regexes(), "bundled:regexes.tsv"),
                             parse_software_lines(bundled::software()));
}

// ---------------------------------------------------------------------------
// Lexicon

Lexicon::Lexicon(KeywordDictionary keywords, TechnicalDictionary technical)
    : keywords_(std::move(keywords)), technical_(std::move(technical)) {
  std::vector<PhraseMatcher::Phrase> phrases;
  const auto& kw = keywords_.keywords();
  for (std::uint32_t i = 0; i < kw.size(); ++i) phrases.push_back({{kw[i]}, i});
  const auto offset = static_cast<std::uint32_t>(kw.size());
  const auto& sw = technical_.software_names();
  for (std::uint32_t i = 0; i < sw.size(); ++i) {
    auto tokens = text::tokenize(sw[i]);
    if (!tokens.empty()) phrases.push_back({std::move(tokens), offset + i});
  }
  combined_ = PhraseMatcher(std::move(phrases));
}

std::vector<Hit> Lexicon::scan(std::span<const std::string> tokens, std::string_view shadow_text) const {
  std::vector<Hit> hits;
  const auto& kw = keywords_.keywords();
  const auto& sw = technical_.software_names();
  for (const auto& m : combined_.match(tokens)) {
    const auto tag = combined_.phrases()[m.phrase].tag;
    if (tag < kw.size()) {
      hits.push_back({HitKind::keyword, kw[tag], m.begin, m.end});
    } else {
      hits.push_back({HitKind::software, sw[tag - kw.size()], m.begin, m.end});
    }
  }
  keywords_.scan_fuzzy(tokens, hits);
  auto regex_hits = technical_.scan_regex(shadow_text);
  hits.insert(hits.end(), std::make_move_iterator(regex_hits.begin()), std::make_move_iterator(regex_hits.end()));
  std::sort(hits.begin(), hits.end(), by_position);
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

}  // namespace ctimine::lexicon
