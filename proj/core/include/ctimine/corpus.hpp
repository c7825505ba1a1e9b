#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctimine/common.hpp"
#include "ctimine/text.hpp"
#include "ctimine/timestamp.hpp"

namespace ctimine::corpus {

// One post, chat message, or darknet page snapshot.
struct DataItem {
  std::string id;
  Source source = Source::forum;
  Timestamp timestamp{};
  std::optional<std::string> lang;
  std::string text;
  std::optional<std::string> url;

  bool operator==(const DataItem&) const = default;
};

struct Rejection {
  std::size_t line = 0;
  std::string reason;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t deduped = 0;
  std::size_t language_dropped = 0;
  std::vector<Rejection> rejections;
};

struct Corpus {
  std::vector<DataItem> items;
  std::string path;
  LoadStats stats;
};

// Parses one record line. Returns the rejection reason on failure.
std::optional<std::string> parse_record(std::string_view line, DataItem& out);

nlohmann::json to_json(const DataItem& item);

// Reads line-delimited records. Invalid lines and repeated ids are rejected
// and counted; an unreadable file throws MissingInputError.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::istream& in, std::string name);

void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Keeps only the most recent darknet snapshot per url. Ties on timestamp keep
// the lexicographically greatest id. Survivors keep their relative order.
Corpus dedup_snapshots(const Corpus& corpus);

// Stop-word ratio heuristic for untagged items: "en" iff at least
// kMinHeuristicTokens tokens and a stop-word fraction >= kEnglishStopwordRatio.
inline constexpr std::size_t kMinHeuristicTokens = 20;
inline constexpr double kEnglishStopwordRatio = 0.10;

std::string detect_language(std::string_view text,
                            const text::WordSet& stopwords = text::default_stopwords());

bool is_language_code(std::string_view code) noexcept;

// Keeps items tagged with `lang`; untagged items are kept iff the heuristic
// classifies them as `lang`. Throws ConfigError for a malformed code.
Corpus filter_language(const Corpus& corpus, std::string_view lang);

}  // namespace ctimine::corpus
