#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ctimine/config.hpp"

namespace ctimine::pipeline {

enum class Stage { ingest, preprocess, filter, embed_hash, topics, eval, report, all };

std::optional<Stage> parse_stage(std::string_view name) noexcept;
std::string_view to_string(Stage stage) noexcept;

// File names inside the output directory.
namespace files {
inline constexpr std::string_view kIngested = "ingested.jsonl";
inline constexpr std::string_view kPreprocessed = "preprocessed.jsonl";
inline constexpr std::string_view kHistogram = "wordcount_histogram.csv";
inline constexpr std::string_view kLabels = "labels.jsonl";
inline constexpr std::string_view kSummary = "summary.csv";
inline constexpr std::string_view kEmbeddings = "embeddings.jsonl";
inline constexpr std::string_view kAssignments = "assignments.jsonl";
inline constexpr std::string_view kTopics = "topics.json";
inline constexpr std::string_view kEval = "eval.json";
inline constexpr std::string_view kFrequencyDiff = "frequency_diff.csv";
inline constexpr std::string_view kDistribution = "topic_distribution.csv";
inline constexpr std::string_view kFlow = "technicality_flow.csv";
inline constexpr std::string_view kManifest = "manifest.json";
}  // namespace files

enum ExitCode : int { kOk = 0, kConfigFailure = 1, kMissingInput = 2, kDataFailure = 3 };

struct RunResult {
  int exit_code = kOk;
  std::string message;
  std::vector<std::string> artifacts;
};

// Runs a stage (or the whole chain) and writes its artifacts plus a manifest.
// Never throws for input, config or data problems; they map to exit codes.
RunResult run(Stage stage, const PipelineConfig& config, std::ostream& log);

}  // namespace ctimine::pipeline
