// ctimine: CTI relevance filtering and topic modelling over cybercrime corpora.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ctimine/config.hpp"
#include "ctimine/pipeline.hpp"

namespace {

struct Overrides {
  std::optional<std::string> corpus, output, keywords, regexes, software, embeddings, label_map, truth, stopwords,
      language, overflow;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> min_words, max_words, min_samples, min_cluster_size, target_dim, embed_dim, top_terms;
  std::optional<double> eps, share_threshold;
};

void apply(const Overrides& o, ctimine::PipelineConfig& c) {
  if (o.corpus) c.corpus = *o.corpus;
  if (o.output) c.output = *o.output;
  if (o.keywords) c.keywords = *o.keywords;
  if (o.regexes) c.regexes = *o.regexes;
  if (o.software) c.software = *o.software;
  if (o.embeddings) c.embeddings = *o.embeddings;
  if (o.label_map) c.label_map = *o.label_map;
  if (o.truth) c.truth = *o.truth;
  if (o.stopwords) c.stopwords = *o.stopwords;
  if (o.language) c.language = *o.language;
  if (o.overflow) {
    auto overflow = ctimine::preprocess::parse_overflow(*o.overflow);
    if (!overflow) throw ctimine::ConfigError("--overflow must be drop or truncate");
    c.length.overflow = *overflow;
  }
  if (o.threads) c.threads = *o.threads;
  if (o.seed) c.seed = *o.seed;
  if (o.min_words) c.length.min_words = *o.min_words;
  if (o.max_words) c.length.max_words = *o.max_words;
  if (o.min_samples) c.density.min_samples = *o.min_samples;
  if (o.min_cluster_size) c.density.min_cluster_size = *o.min_cluster_size;
  if (o.target_dim) c.target_dim = *o.target_dim;
  if (o.embed_dim) c.embed_dim = *o.embed_dim;
  if (o.top_terms) c.top_terms = *o.top_terms;
  if (o.eps) c.density.eps = *o.eps;
  if (o.share_threshold) c.share_threshold = *o.share_threshold;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CTI relevance filtering and topic modelling pipeline"};
  app.require_subcommand(1, 1);

  std::string config_path;
  Overrides o;
  const std::pair<const char*, const char*> commands[] = {
      {"ingest", "load, deduplicate and language-filter the corpus"},
      {"preprocess", "normalize and tokenize ingested items"},
      {"filter", "dictionary-based CTI relevance and technicality labels"},
      {"embed-hash", "feature-hashing embeddings for preprocessed items"},
      {"topics", "density clustering and c-TF-IDF topic representations"},
      {"eval", "precision/recall/F1 against a labeled sample"},
      {"report", "topic distributions, technicality flow and word-frequency differences"},
      {"all", "run every stage in order"}};
  for (const auto& [name, description] : commands) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--input", o.corpus, "corpus record file");
    sub->add_option("--output", o.output, "output directory");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "seed for hashing and projection");
    sub->add_option("--min-words", o.min_words, "minimum words per item");
    sub->add_option("--max-words", o.max_words, "maximum words per item");
    sub->add_option("--overflow", o.overflow, "drop|truncate items over max words");
    sub->add_option("--eps", o.eps, "density clustering radius");
    sub->add_option("--min-samples", o.min_samples, "neighbours needed for a core point");
    sub->add_option("--min-cluster-size", o.min_cluster_size, "smallest cluster kept as a topic");
    sub->add_option("--dim", o.target_dim, "reduced dimension before clustering");
    sub->add_option("--embed-dim", o.embed_dim, "feature-hashing embedding dimension");
    sub->add_option("--top-terms", o.top_terms, "terms per topic representation");
    sub->add_option("--share-threshold", o.share_threshold, "main-topic share threshold");
    sub->add_option("--language", o.language, "ISO-639-1 language to keep");
    sub->add_option("--keywords", o.keywords, "keyword dictionary file");
    sub->add_option("--regexes", o.regexes, "regex dictionary file (name<TAB>pattern)");
    sub->add_option("--software", o.software, "software name file");
    sub->add_option("--embeddings", o.embeddings, "external embeddings record file");
    sub->add_option("--label-map", o.label_map, "topic label map (JSON object)");
    sub->add_option("--truth", o.truth, "labeled sample for eval");
    sub->add_option("--stopwords", o.stopwords, "stop-word file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ctimine::pipeline::kConfigFailure;
  }

  const auto stage = ctimine::pipeline::parse_stage(app.get_subcommands().front()->get_name());
  ctimine::PipelineConfig config;
  try {
    if (!config_path.empty()) config = ctimine::load_config(config_path);
    apply(o, config);
  } catch (const ctimine::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ctimine::pipeline::kConfigFailure;
  }

  const auto result = ctimine::pipeline::run(*stage, config, std::cerr);
  if (result.exit_code == ctimine::pipeline::kOk) {
    for (const auto& a : result.artifacts) std::cout << (std::filesystem::path(config.output) / a).string() << '\n';
  }
  return result.exit_code;
}
