#include "ctimine/config.hpp"

#include <fstream>

#include "ctimine/common.hpp"
#include "ctimine/corpus.hpp"

namespace ctimine {

void PipelineConfig::validate() const {
  length.validate();
  fuzz.validate();
  if (!corpus::is_language_code(language)) throw ConfigError("invalid language code \"" + language + "\"");
  if (embed_dim < 2) throw ConfigError("embed_dim must be at least 2");
  if (target_dim < 1) throw ConfigError("target_dim must be at least 1");
  if (!(density.eps > 0.0)) throw ConfigError("eps must be positive");
  if (density.min_samples < 1) throw ConfigError("min_samples must be at least 1");
  if (density.min_cluster_size < 1) throw ConfigError("min_cluster_size must be at least 1");
  if (top_terms < 1) throw ConfigError("top_terms must be at least 1");
  if (!(share_threshold >= 0.0 && share_threshold <= 1.0)) throw ConfigError("share_threshold must be in [0, 1]");
  if (diff_top_k < 1) throw ConfigError("diff_top_k must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (output.empty()) throw ConfigError("output directory must be set");
}

namespace {

template <typename T>
T get_as(const nlohmann::json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key \"" + key + "\" has the wrong type");
  }
}

std::size_t get_count(const nlohmann::json& value, const std::string& key) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    throw ConfigError("config key \"" + key + "\" must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

}  // namespace

PipelineConfig config_from_json(const nlohmann::json& object, PipelineConfig c) {
  if (!object.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (key == "corpus") c.corpus = get_as<std::string>(value, key);
    else if (key == "keywords") c.keywords = get_as<std::string>(value, key);
    else if (key == "regexes") c.regexes = get_as<std::string>(value, key);
    else if (key == "software") c.software = get_as<std::string>(value, key);
    else if (key == "embeddings") c.embeddings = get_as<std::string>(value, key);
    else if (key == "label_map") c.label_map = get_as<std::string>(value, key);
    else if (key == "truth") c.truth = get_as<std::string>(value, key);
    else if (key == "stopwords") c.stopwords = get_as<std::string>(value, key);
    else if (key == "output") c.output = get_as<std::string>(value, key);
    else if (key == "language") c.language = get_as<std::string>(value, key);
    else if (key == "min_words") c.length.min_words = get_count(value, key);
    else if (key == "max_words") c.length.max_words = get_count(value, key);
    else if (key == "overflow") {
      auto overflow = preprocess::parse_overflow(get_as<std::string>(value, key));
      if (!overflow) throw ConfigError("overflow must be \"drop\" or \"truncate\"");
      c.length.overflow = *overflow;
    }
    else if (key == "fuzz_min_len") c.fuzz.min_len = get_count(value, key);
    else if (key == "fuzz_threshold") c.fuzz.threshold = get_as<double>(value, key);
    else if (key == "anchor_ratio") c.fuzz.anchor_ratio = get_as<double>(value, key);
    else if (key == "embed_dim") c.embed_dim = get_count(value, key);
    else if (key == "target_dim") c.target_dim = get_count(value, key);
    else if (key == "eps") c.density.eps = get_as<double>(value, key);
    else if (key == "min_samples") c.density.min_samples = get_count(value, key);
    else if (key == "min_cluster_size") c.density.min_cluster_size = get_count(value, key);
    else if (key == "seed") c.seed = get_count(value, key);
    else if (key == "top_terms") c.top_terms = get_count(value, key);
    else if (key == "share_threshold") c.share_threshold = get_as<double>(value, key);
    else if (key == "diff_top_k") c.diff_top_k = get_count(value, key);
    else if (key == "threads") c.threads = static_cast<unsigned>(get_count(value, key));
    else throw ConfigError("unknown config key \"" + key + "\"");
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  nlohmann::json object;
  try {
    object = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  auto config = config_from_json(object);
  // Relative paths are taken relative to the config file.
  const auto base = path.parent_path();
  for (auto* p : {&config.corpus, &config.keywords, &config.regexes, &config.software, &config.embeddings,
                  &config.label_map, &config.truth, &config.stopwords}) {
    if (!p->empty() && std::filesystem::path(*p).is_relative()) *p = (base / *p).lexically_normal().string();
  }
  if (object.contains("output") && std::filesystem::path(config.output).is_relative()) {
    config.output = (base / config.output).lexically_normal().string();
  }
  return config;
}

nlohmann::json effective_settings(const PipelineConfig& c) {
  return {{"corpus", c.corpus},
          {"keywords", c.keywords},
          {"regexes", c.regexes},
          {"software", c.software},
          {"embeddings", c.embeddings},
          {"label_map", c.label_map},
          {"truth", c.truth},
          {"stopwords", c.stopwords},
          {"language", c.language},
          {"min_words", c.length.min_words},
          {"max_words", c.length.max_words},
          {"overflow", preprocess::to_string(c.length.overflow)},
          {"fuzz_min_len", c.fuzz.min_len},
          {"fuzz_threshold", c.fuzz.threshold},
          {"anchor_ratio", c.fuzz.anchor_ratio},
          {"embed_dim", c.embed_dim},
          {"target_dim", c.target_dim},
          {"eps", c.density.eps},
          {"min_samples", c.density.min_samples},
          {"min_cluster_size", c.density.min_cluster_size},
          {"seed", c.seed},
          {"top_terms", c.top_terms},
          {"share_threshold", c.share_threshold},
          {"diff_top_k", c.diff_top_k}};
}

}  // namespace ctimine
