#include "ctimine/preprocess.hpp"

#include <algorithm>

#include "ctimine/bundled.hpp"
#include "ctimine/jsonl.hpp"
#include "ctimine/parallel.hpp"
#include "ctimine/text.hpp"

namespace ctimine::preprocess {

using text::is_ascii_alpha;
using text::is_ascii_digit;
using text::is_ascii_space;

void LengthPolicy::validate() const {
  if (min_words < 1) throw ConfigError("min_words must be at least 1");
  if (max_words <= min_words) throw ConfigError("max_words must exceed min_words");
}

std::optional<Overflow> parse_overflow(std::string_view text) noexcept {
  if (text == "drop") return Overflow::drop;
  if (text == "truncate") return Overflow::truncate;
  return std::nullopt;
}

std::string_view to_string(Overflow overflow) noexcept {
  return overflow == Overflow::drop ? "drop" : "truncate";
}

const ContractionTable& default_contractions() {
  static const ContractionTable table = [] {
    ContractionTable t;
    for (const auto& line : text::read_list_lines(bundled::contractions())) {
      const auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      t.emplace(text::to_lower(line.substr(0, tab)),
                std::string(text::trim(std::string_view(line).substr(tab + 1))));
    }
    return t;
  }();
  return table;
}

namespace {

bool is_scheme_char(char c) noexcept {
  return is_ascii_alpha(c) || is_ascii_digit(c) || c == '+' || c == '.' || c == '-';
}

// Start of the earliest URL inside a whitespace-free token, or npos.
// Matching is case-insensitive.
std::size_t url_start(std::string_view token) noexcept {
  std::size_t best = std::string_view::npos;
  for (std::size_t i = 0; i + 4 <= token.size(); ++i) {
    if (text::to_lower_ascii(token[i]) == 'w' && text::to_lower_ascii(token[i + 1]) == 'w' &&
        text::to_lower_ascii(token[i + 2]) == 'w' && token[i + 3] == '.') {
      best = i;
      break;
    }
  }
  for (std::size_t q = token.find("://"); q != std::string_view::npos && q < best;
       q = token.find("://", q + 1)) {
    std::size_t b = q;
    while (b > 0 && is_scheme_char(token[b - 1])) --b;
    while (b < q && !is_ascii_alpha(token[b])) ++b;
    if (b < q) {
      best = std::min(best, b);
      break;
    }
  }
  return best;
}

bool has_digit(std::string_view s) noexcept {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_ascii_digit(c); });
}

bool is_mention(std::string_view token) noexcept {
  return !token.empty() && (token.front() == '@' || token.front() == '#');
}

// Expands a contraction in the letter core of the token; otherwise removes
// apostrophes that sit between two letters.
std::string expand_token(std::string_view token, const ContractionTable& table) {
  std::size_t b = 0, e = token.size();
  while (b < e && !is_ascii_alpha(token[b])) ++b;
  while (e > b && !is_ascii_alpha(token[e - 1])) --e;
  if (b == e) return std::string(token);
  const std::string core(token.substr(b, e - b));
  if (auto it = table.find(core); it != table.end()) {
    return std::string(token.substr(0, b)) + it->second + std::string(token.substr(e));
  }
  std::string out;
  out.reserve(token.size());
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (token[i] == '\'' && i > 0 && i + 1 < token.size() && is_ascii_alpha(token[i - 1]) &&
        is_ascii_alpha(token[i + 1])) {
      continue;
    }
    out.push_back(token[i]);
  }
  return out;
}

std::string collapse_runs(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t run = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    run = (i > 0 && s[i] == s[i - 1]) ? run + 1 : 1;
    if (run <= 3) out.push_back(s[i]);
  }
  return out;
}

}  // namespace

std::string normalize_text(std::string_view raw, const ContractionTable& contractions) {
  std::string ascii;
  ascii.reserve(raw.size());
  for (char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_ascii_space(ch)) {
      ascii.push_back(' ');
    } else if (c >= 0x20 && c < 0x7f) {
      ascii.push_back(text::to_lower_ascii(ch));
    }
  }

  std::vector<std::string> expanded;
  for (auto token : text::split_whitespace(ascii)) {
    if (is_mention(token) || has_digit(token)) continue;
    expanded.push_back(expand_token(token, contractions));
  }

  std::string joined;
  joined.reserve(ascii.size());
  for (const auto& piece : expanded) {
    for (auto token : text::split_whitespace(piece)) {
      token = token.substr(0, url_start(token));
      if (token.empty()) continue;
      if (!joined.empty()) joined.push_back(' ');
      joined.append(token);
    }
  }
  return collapse_runs(joined);
}

std::string shadow_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (auto token : text::split_whitespace(raw)) {
    if (is_mention(token)) continue;
    token = token.substr(0, url_start(token));
    if (token.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(token);
  }
  return out;
}

PreprocessedItem make_candidate(const corpus::DataItem& item, const ContractionTable& contractions) {
  PreprocessedItem out;
  out.id = item.id;
  out.source = item.source;
  out.normalized_text = normalize_text(item.text, contractions);
  out.tokens = text::tokenize(out.normalized_text);
  out.word_count = out.tokens.size();
  out.shadow_text = shadow_text(item.text);
  return out;
}

std::optional<PreprocessedItem> apply_length_policy(PreprocessedItem item, const LengthPolicy& policy) {
  if (item.word_count < policy.min_words) return std::nullopt;
  if (item.word_count <= policy.max_words) return item;
  if (policy.overflow == Overflow::drop) return std::nullopt;

  // Cut the text right after the chunk holding the last kept token.
  const std::string_view text = item.normalized_text;
  std::size_t kept = 0;
  std::size_t cut = text.size();
  std::size_t i = 0;
  while (i < text.size() && kept < policy.max_words) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (!text::strip_punct_edges(text.substr(start, i - start)).empty()) {
      ++kept;
      cut = i;
    }
  }
  item.normalized_text.resize(cut);
  item.tokens.resize(policy.max_words);
  item.word_count = policy.max_words;
  return item;
}

std::optional<PreprocessedItem> preprocess_item(const corpus::DataItem& item, const LengthPolicy& policy) {
  return apply_length_policy(make_candidate(item), policy);
}

std::vector<PreprocessedItem> preprocess_corpus(const std::vector<corpus::DataItem>& items,
                                                const LengthPolicy& policy, unsigned threads,
                                                WordCounts* candidate_counts) {
  std::vector<std::optional<PreprocessedItem>> slots(items.size());
  std::vector<std::size_t> counts(items.size());
  const auto& table = default_contractions();
  parallel_for_chunks(items.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto candidate = make_candidate(items[i], table);
      counts[i] = candidate.word_count;
      slots[i] = apply_length_policy(std::move(candidate), policy);
    }
  });
  if (candidate_counts) {
    candidate_counts->clear();
    for (std::size_t i = 0; i < items.size(); ++i) candidate_counts->emplace_back(items[i].source, counts[i]);
  }
  std::vector<PreprocessedItem> out;
  for (auto& slot : slots) {
    if (slot) out.push_back(std::move(*slot));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

nlohmann::json to_json(const PreprocessedItem& item) {
  return {{"id", item.id},
          {"source", to_string(item.source)},
          {"text", item.normalized_text},
          {"word_count", item.word_count},
          {"shadow", item.shadow_text}};
}

PreprocessedItem from_json(const nlohmann::json& record) {
  PreprocessedItem item;
  item.id = record.at("id").get<std::string>();
  item.normalized_text = record.at("text").get<std::string>();
  item.tokens = text::tokenize(item.normalized_text);
  item.word_count = item.tokens.size();
  if (auto it = record.find("word_count"); it != record.end() && it->get<std::size_t>() != item.word_count) {
    throw DataError("word_count mismatch for \"" + item.id + "\"");
  }
  if (auto it = record.find("source"); it != record.end()) {
    auto source = parse_source(it->get<std::string>());
    if (!source) throw DataError("unknown source for \"" + item.id + "\"");
    item.source = *source;
  }
  if (auto it = record.find("shadow"); it != record.end()) {
    item.shadow_text = it->get<std::string>();
  } else {
    item.shadow_text = item.normalized_text;
  }
  return item;
}

void write_preprocessed(const std::vector<PreprocessedItem>& items, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  for (const auto& item : items) out << jsonl::dump(to_json(item)) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<PreprocessedItem> load_preprocessed(const std::filesystem::path& path) {
  std::vector<PreprocessedItem> items;
  jsonl::for_each_record(path, [&](std::size_t, const nlohmann::json& record) {
    items.push_back(from_json(record));
  });
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return items;
}

}  // namespace ctimine::preprocess
