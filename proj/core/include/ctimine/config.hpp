#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ctimine/lexicon.hpp"
#include "ctimine/preprocess.hpp"
#include "ctimine/topics.hpp"

namespace ctimine {

inline constexpr std::uint64_t kDefaultSeed = 20240229;

// Effective settings for a pipeline run. Empty paths fall back to the bundled
// fixtures (dictionaries, stop words) or to stage outputs in the output dir.
struct PipelineConfig {
  // inputs
  std::string corpus;
  std::string keywords;
  std::string regexes;
  std::string software;
  std::string embeddings;
  std::string label_map;
  std::string truth;
  std::string stopwords;
  std::string output = "out";

  std::string language = "en";
  preprocess::LengthPolicy length;
  lexicon::FuzzParams fuzz;

  std::size_t embed_dim = 256;
  std::size_t target_dim = 5;
  topics::DensityParams density{0.5, 100, 100};
  std::uint64_t seed = kDefaultSeed;

  std::size_t top_terms = topics::kDefaultTopTerms;
  double share_threshold = 0.02;
  std::size_t diff_top_k = 20;

  unsigned threads = 1;

  // Throws ConfigError on inconsistent values.
  void validate() const;
};

// Reads a JSON object whose keys mirror PipelineConfig (see README). Unknown
// keys and type mismatches throw ConfigError.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig config_from_json(const nlohmann::json& object, PipelineConfig base = {});

// Every setting that can influence artifact content. Output location and
// thread count are excluded.
nlohmann::json effective_settings(const PipelineConfig& config);

}  // namespace ctimine
