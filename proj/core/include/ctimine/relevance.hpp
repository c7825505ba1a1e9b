#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctimine/common.hpp"
#include "ctimine/lexicon.hpp"
#include "ctimine/preprocess.hpp"

namespace ctimine::relevance {

enum class Technicality : std::uint8_t { technical, non_technical, both, none };

std::string_view to_string(Technicality t) noexcept;
std::optional<Technicality> parse_technicality(std::string_view text) noexcept;

struct RelevanceLabel {
  std::string id;
  bool relevant = false;
  Technicality technicality = Technicality::none;
  std::vector<lexicon::Hit> hits;

  bool operator==(const RelevanceLabel&) const = default;
};

// Derives relevant/technicality from the hit kinds.
RelevanceLabel make_label(std::string id, std::vector<lexicon::Hit> hits);

RelevanceLabel classify(const preprocess::PreprocessedItem& item, const lexicon::Lexicon& lex);

struct SourceSummary {
  std::string source;  // "forum", "chat", "darknet" or "all"
  std::size_t total = 0;
  std::size_t relevant = 0;
  double share = 0.0;  // percent
  bool share_defined = false;
};

struct Classification {
  std::vector<RelevanceLabel> labels;  // ordered by id
  std::vector<SourceSummary> summary;  // forum, chat, darknet, all
};

std::vector<SourceSummary> summarize(const std::vector<preprocess::PreprocessedItem>& items,
                                     const std::vector<RelevanceLabel>& labels);

Classification classify_corpus(const std::vector<preprocess::PreprocessedItem>& items,
                               const lexicon::Lexicon& lex, unsigned threads = 1);

nlohmann::json to_json(const RelevanceLabel& label);
RelevanceLabel label_from_json(const nlohmann::json& record);

void write_labels(const std::vector<RelevanceLabel>& labels, const std::filesystem::path& path);
std::vector<RelevanceLabel> load_labels(const std::filesystem::path& path);

// CSV: source,total,relevant,share,share_defined with shares to two decimals.
void write_summary_csv(const std::vector<SourceSummary>& summary, const std::filesystem::path& path);
std::string format_share(double percent);

}  // namespace ctimine::relevance
