#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctimine/common.hpp"
#include "ctimine/corpus.hpp"

namespace ctimine::preprocess {

enum class Overflow { drop, truncate };

struct LengthPolicy {
  std::size_t min_words = 7;
  std::size_t max_words = 1000;
  Overflow overflow = Overflow::drop;

  // Throws ConfigError unless min_words >= 1 and max_words > min_words.
  void validate() const;
};

std::optional<Overflow> parse_overflow(std::string_view text) noexcept;
std::string_view to_string(Overflow overflow) noexcept;

struct PreprocessedItem {
  std::string id;
  Source source = Source::forum;
  std::string normalized_text;
  std::vector<std::string> tokens;
  std::size_t word_count = 0;
  // Raw text with URLs and mentions removed; digits, case and repetitions kept
  // so IOC patterns can still be found.
  std::string shadow_text;

  bool operator==(const PreprocessedItem&) const = default;
};

using ContractionTable = std::unordered_map<std::string, std::string>;

const ContractionTable& default_contractions();

// Full normalization. Steps, in order: drop non-ASCII bytes and control
// characters; lowercase; drop tokens starting with "@" or "#"; drop tokens
// containing digits; expand contractions (other letter-apostrophe-letter
// sequences lose the apostrophe); drop URLs (scheme:// or www. up to the next
// whitespace); cap runs of one character at three; join tokens with single
// spaces. The result is a fixpoint of this function.
std::string normalize_text(std::string_view raw,
                           const ContractionTable& contractions = default_contractions());

// Raw text with URL substrings and "@"/"#" tokens removed.
std::string shadow_text(std::string_view raw);

// Builds the unfiltered candidate (tokenized, word_count set).
PreprocessedItem make_candidate(const corpus::DataItem& item,
                                const ContractionTable& contractions = default_contractions());

std::optional<PreprocessedItem> apply_length_policy(PreprocessedItem item,
                                                    const LengthPolicy& policy);

std::optional<PreprocessedItem> preprocess_item(const corpus::DataItem& item,
                                                const LengthPolicy& policy);

using WordCounts = std::vector<std::pair<Source, std::size_t>>;

// Preprocesses a corpus; output is ordered by id regardless of thread count.
// When `candidate_counts` is given it receives the word count of every item
// before the length policy, in input order.
std::vector<PreprocessedItem> preprocess_corpus(const std::vector<corpus::DataItem>& items,
                                                const LengthPolicy& policy,
                                                unsigned threads = 1,
                                                WordCounts* candidate_counts = nullptr);

nlohmann::json to_json(const PreprocessedItem& item);
PreprocessedItem from_json(const nlohmann::json& record);

void write_preprocessed(const std::vector<PreprocessedItem>& items,
                        const std::filesystem::path& path);
std::vector<PreprocessedItem> load_preprocessed(const std::filesystem::path& path);

}  // namespace ctimine::preprocess
