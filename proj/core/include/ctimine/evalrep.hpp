#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctimine/common.hpp"
#include "ctimine/preprocess.hpp"
#include "ctimine/relevance.hpp"
#include "ctimine/text.hpp"
#include "ctimine/topics.hpp"

namespace ctimine::evalrep {

inline constexpr int kReportFormatVersion = 1;

struct EvalReport {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  // Absent when the denominator is zero.
  std::optional<double> precision, recall, f1;
};

EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);

using Truth = std::vector<std::pair<std::string, bool>>;

Truth load_truth(const std::filesystem::path& path);

// Confusion counts over the truth ids. Throws DataError listing truth ids
// missing from the predictions.
EvalReport evaluate(const std::vector<relevance::RelevanceLabel>& predictions, const Truth& truth);

nlohmann::json to_json(const EvalReport& report);

struct TermDiff {
  std::string term;
  double freq_relevant = 0.0;
  double freq_irrelevant = 0.0;
  double diff = 0.0;
};

struct FrequencyDiff {
  std::vector<TermDiff> all;       // sorted by term
  std::vector<TermDiff> positive;  // diff > 0, descending, ties by term
  std::vector<TermDiff> negative;  // diff < 0, ascending, ties by term
};

// Throws DataError when either class is empty.
FrequencyDiff frequency_diff(const std::vector<std::vector<std::string>>& relevant,
                             const std::vector<std::vector<std::string>>& irrelevant,
                             const text::WordSet& stopwords, std::size_t k);

void write_frequency_diff_csv(const FrequencyDiff& diff, const std::filesystem::path& path);

struct TopicShare {
  int topic = 0;
  std::string label;
  std::size_t count = 0;
  double share = 0.0;
  bool main = false;  // share above the threshold
};

struct SourceDistribution {
  std::string source;
  std::size_t assigned = 0;  // non-outlier items
  std::vector<TopicShare> topics;
};

using SourceMap = std::unordered_map<std::string, Source>;

SourceMap source_map(const std::vector<preprocess::PreprocessedItem>& items);

inline constexpr double kDefaultShareThreshold = 0.02;

// Throws DataError when an assigned id has no source.
std::vector<SourceDistribution> topic_distribution(const topics::TopicAssignment& assignment,
                                                   const std::map<int, std::string>& labels,
                                                   const SourceMap& sources,
                                                   double threshold = kDefaultShareThreshold);

void write_topic_distribution_csv(const std::vector<SourceDistribution>& dist,
                                  const std::filesystem::path& path);

struct FlowEdge {
  std::string stage;
  std::string from;
  std::string to;
  std::size_t weight = 0;
};

struct FlowReport {
  std::vector<FlowEdge> edges;
  // (technical + both) / total per source, for sources with items.
  std::vector<std::pair<std::string, double>> technical_share;
};

// Stages: "source" (source -> technicality), "kind" (technicality -> hit kind,
// weighted by hits) and "term" (hit kind -> term, weighted by hits).
FlowReport technicality_flow(const std::vector<relevance::RelevanceLabel>& labels,
                             const SourceMap& sources);

void write_flow_csv(const FlowReport& flow, const std::filesystem::path& path);

struct HistogramBin {
  std::string source;
  std::size_t bin = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

inline constexpr std::size_t kHistogramBins = 20;

// log10(word_count) bins over the observed range, per source. Items with zero
// words are skipped.
std::vector<HistogramBin> wordcount_histogram(const std::vector<std::pair<Source, std::size_t>>& counts,
                                              std::size_t bins = kHistogramBins);

void write_histogram_csv(const std::vector<HistogramBin>& bins, const std::filesystem::path& path);

}  // namespace ctimine::evalrep
