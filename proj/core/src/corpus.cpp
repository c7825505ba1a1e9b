#include "ctimine/corpus.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "ctimine/jsonl.hpp"

namespace ctimine::corpus {
namespace {

using Json = nlohmann::json;

// Returns the string value of an optional key; nullopt if absent or null.
std::optional<std::string> optional_string(const Json& obj, const char* key, std::string& error) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    error = std::string("\"") + key + "\" is not a string";
    return std::nullopt;
  }
  return it->get<std::string>();
}

}  // namespace

std::optional<std::string> parse_record(std::string_view line, DataItem& out) {
  Json obj;
  try {
    obj = Json::parse(line);
  } catch (const Json::exception&) {
    return "malformed record";
  }
  if (!obj.is_object()) return "record is not an object";

  for (const char* key : {"id", "source", "timestamp", "text"}) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::string("missing \"") + key + "\"";
    if (!it->is_string()) return std::string("\"") + key + "\" is not a string";
  }
  DataItem item;
  item.id = obj["id"].get<std::string>();
  if (text::trim(item.id).empty()) return "empty \"id\"";
  auto source = parse_source(obj["source"].get_ref<const std::string&>());
  if (!source) return "unknown source";
  item.source = *source;
  auto ts = parse_iso8601(obj["timestamp"].get_ref<const std::string&>());
  if (!ts) return "invalid timestamp";
  item.timestamp = *ts;
  item.text = obj["text"].get<std::string>();
  if (text::trim(item.text).empty()) return "empty \"text\"";

  std::string error;
  item.lang = optional_string(obj, "lang", error);
  if (!error.empty()) return error;
  item.url = optional_string(obj, "url", error);
  if (!error.empty()) return error;
  out = std::move(item);
  return std::nullopt;
}

nlohmann::json to_json(const DataItem& item) {
  Json obj = {{"id", item.id},
              {"source", to_string(item.source)},
              {"timestamp", format_iso8601(item.timestamp)},
              {"text", item.text}};
  if (item.lang) obj["lang"] = *item.lang;
  if (item.url) obj["url"] = *item.url;
  return obj;
}

Corpus parse_corpus(std::istream& in, std::string name) {
  Corpus corpus;
  corpus.path = std::move(name);
  std::unordered_set<std::string> seen;
  jsonl::for_each_line(in, [&](std::size_t number, std::string_view line) {
    ++corpus.stats.lines;
    DataItem item;
    std::optional<std::string> reason;
    if (text::trim(line).empty()) {
      reason = "blank line";
    } else {
      reason = parse_record(line, item);
    }
    if (!reason && !seen.insert(item.id).second) reason = "duplicate id \"" + item.id + "\"";
    if (reason) {
      ++corpus.stats.rejected;
      corpus.stats.rejections.push_back({number, std::move(*reason)});
      return;
    }
    ++corpus.stats.accepted;
    corpus.items.push_back(std::move(item));
  });
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  auto in = jsonl::open_input(path);
  return parse_corpus(in, path.string());
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  for (const auto& item : corpus.items) out << jsonl::dump(to_json(item)) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

Corpus dedup_snapshots(const Corpus& corpus) {
  // url -> index of the current winner
  std::map<std::string_view, std::size_t> latest;
  const auto& items = corpus.items;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (item.source != Source::darknet || !item.url) continue;
    auto [it, inserted] = latest.try_emplace(*item.url, i);
    if (inserted) continue;
    const auto& best = items[it->second];
    if (std::tie(item.timestamp, item.id) > std::tie(best.timestamp, best.id)) it->second = i;
  }
  Corpus out;
  out.path = corpus.path;
  out.stats = corpus.stats;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (item.source == Source::darknet && item.url && latest.at(*item.url) != i) {
      ++out.stats.deduped;
      continue;
    }
    out.items.push_back(item);
  }
  return out;
}

std::string detect_language(std::string_view raw, const text::WordSet& stopwords) {
  std::size_t tokens = 0;
  std::size_t hits = 0;
  for (auto piece : text::split_whitespace(raw)) {
    auto core = text::strip_punct_edges(piece);
    if (core.empty()) continue;
    ++tokens;
    if (stopwords.count(text::to_lower(core))) ++hits;
  }
  if (tokens < kMinHeuristicTokens) return "unknown";
  const double ratio = static_cast<double>(hits) / static_cast<double>(tokens);
  return ratio >= kEnglishStopwordRatio ? "en" : "unknown";
}

bool is_language_code(std::string_view code) noexcept {
  return code.size() == 2 && code[0] >= 'a' && code[0] <= 'z' && code[1] >= 'a' && code[1] <= 'z';
}

Corpus filter_language(const Corpus& corpus, std::string_view lang) {
  if (!is_language_code(lang)) {
    throw ConfigError("invalid language code \"" + std::string(lang) + "\"");
  }
  Corpus out;
  out.path = corpus.path;
  out.stats = corpus.stats;
  for (const auto& item : corpus.items) {
    const bool keep = item.lang ? text::to_lower(*item.lang) == lang
                                : detect_language(item.text) == lang;
    if (keep) {
      out.items.push_back(item);
    } else {
      ++out.stats.language_dropped;
    }
  }
  return out;
}

}  // namespace ctimine::corpus
