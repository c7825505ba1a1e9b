#include "ctimine/pipeline.hpp"

#include <algorithm>
#include <map>

#include "ctimine/bundled.hpp"
#include "ctimine/corpus.hpp"
#include "ctimine/evalrep.hpp"
#include "ctimine/hashing.hpp"
#include "ctimine/jsonl.hpp"
#include "ctimine/lexicon.hpp"
#include "ctimine/preprocess.hpp"
#include "ctimine/relevance.hpp"
#include "ctimine/topics.hpp"

namespace ctimine::pipeline {

namespace fs = std::filesystem;
using Json = nlohmann::json;

std::optional<Stage> parse_stage(std::string_view name) noexcept {
  for (Stage s : {Stage::ingest, Stage::preprocess, Stage::filter, Stage::embed_hash, Stage::topics, Stage::eval,
                  Stage::report, Stage::all}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::ingest: return "ingest";
    case Stage::preprocess: return "preprocess";
    case Stage::filter: return "filter";
    case Stage::embed_hash: return "embed-hash";
    case Stage::topics: return "topics";
    case Stage::eval: return "eval";
    case Stage::report: return "report";
    case Stage::all: return "all";
  }
  return "all";
}

namespace {

class Runner {
 public:
  Runner(const PipelineConfig& config, std::ostream& log) : config_(config), out_(config.output), log_(log) {}

  void ingest();
  void preprocess();
  void filter();
  void embed_hash();
  void topics();
  void eval();
  void report();

  void write_manifest(Stage stage);
  const std::vector<std::string>& artifacts() const { return artifacts_; }

 private:
  // Stage outputs read back from the output directory.
  fs::path stage_input(std::string_view name) {
    const auto path = out_ / name;
    if (!fs::is_regular_file(path)) throw MissingInputError(path.string());
    inputs_[std::string(name)] = hashing::file_digest(path);
    return path;
  }

  // User-supplied input named by the config.
  fs::path external_input(const std::string& path, std::string_view what) {
    if (path.empty()) throw MissingInputError(std::string(what) + " (not configured)");
    if (!fs::is_regular_file(path)) throw MissingInputError(path);
    inputs_[path] = hashing::file_digest(path);
    return path;
  }

  fs::path artifact(std::string_view name) {
    artifacts_.emplace_back(name);
    return out_ / name;
  }

  void warn(std::string message) {
    log_ << "warning: " << message << '\n';
    warnings_.push_back(std::move(message));
  }

  lexicon::Lexicon build_lexicon() {
    auto keywords = config_.keywords.empty()
                        ? lexicon::default_keyword_dictionary(config_.fuzz)
                        : lexicon::load_keyword_dictionary(external_input(config_.keywords, "keywords"), config_.fuzz);
    lexicon::TechnicalDictionary technical;
    if (config_.regexes.empty() && config_.software.empty()) {
      technical = lexicon::default_technical_dictionary();
    } else {
      technical = lexicon::TechnicalDictionary(
          config_.regexes.empty()
              ? lexicon::parse_regex_lines(bundled_regexes(), "bundled:regexes.tsv")
              : lexicon::parse_regex_lines(text::read_file(external_input(config_.regexes, "regexes").string()),
                                           config_.regexes),
          config_.software.empty()
              ? lexicon::parse_software_lines(bundled_software())
              : lexicon::parse_software_lines(text::read_file(external_input(config_.software, "software").string())));
    }
    if (technical.rejected_software() > 0) {
      warn(std::to_string(technical.rejected_software()) + " software names shorter than " +
           std::to_string(lexicon::TechnicalDictionary::kMinSoftwareLength) + " characters rejected");
    }
    return lexicon::Lexicon(std::move(keywords), std::move(technical));
  }

  static std::string_view bundled_regexes();
  static std::string_view bundled_software();

  text::WordSet stopwords() {
    if (config_.stopwords.empty()) return text::default_stopwords();
    return text::load_stopwords(external_input(config_.stopwords, "stopwords").string());
  }

  const PipelineConfig& config_;
  fs::path out_;
  std::ostream& log_;
  std::map<std::string, std::string> inputs_;
  Json counts_ = Json::object();
  std::vector<std::string> artifacts_;
  std::vector<std::string> warnings_;
};

std::string_view Runner::bundled_regexes() { return bundled::regexes(); }
std::string_view Runner::bundled_software() { return bundled::software(); }

void Runner::ingest() {
  const auto path = external_input(config_.corpus, "corpus");
  auto loaded = corpus::load_corpus(path);
  auto deduped = corpus::dedup_snapshots(loaded);
  auto filtered = corpus::filter_language(deduped, config_.language);
  corpus::write_corpus(filtered, artifact(files::kIngested));

  const auto& stats = filtered.stats;
  Json rejections = Json::array();
  for (const auto& r : stats.rejections) rejections.push_back({{"line", r.line}, {"reason", r.reason}});
  counts_["ingest"] = {{"lines", stats.lines},
                       {"accepted", stats.accepted},
                       {"rejected", stats.rejected},
                       {"deduped", stats.deduped},
                       {"language_dropped", stats.language_dropped},
                       {"kept", filtered.items.size()},
                       {"rejections", std::move(rejections)}};
  log_ << "ingest: " << stats.accepted << " accepted, " << stats.rejected << " rejected, " << stats.deduped
       << " deduped, " << filtered.items.size() << " kept\n";
}

void Runner::preprocess() {
  auto corpus = corpus::load_corpus(stage_input(files::kIngested));
  if (corpus.stats.rejected > 0) throw DataError(std::string(files::kIngested) + " contains invalid records");
  preprocess::WordCounts counts;
  auto items = preprocess::preprocess_corpus(corpus.items, config_.length, config_.threads, &counts);
  preprocess::write_preprocessed(items, artifact(files::kPreprocessed));
  evalrep::write_histogram_csv(evalrep::wordcount_histogram(counts), artifact(files::kHistogram));
  counts_["preprocess"] = {{"input", corpus.items.size()}, {"kept", items.size()},
                           {"dropped", corpus.items.size() - items.size()}};
  log_ << "preprocess: " << items.size() << " of " << corpus.items.size() << " items kept\n";
}

void Runner::filter() {
  auto items = preprocess::load_preprocessed(stage_input(files::kPreprocessed));
  const auto lex = build_lexicon();
  auto result = relevance::classify_corpus(items, lex, config_.threads);
  relevance::write_labels(result.labels, artifact(files::kLabels));
  relevance::write_summary_csv(result.summary, artifact(files::kSummary));

  std::map<std::string, std::size_t> by_class;
  for (const auto& label : result.labels) ++by_class[std::string(relevance::to_string(label.technicality))];
  Json summary = Json::object();
  for (const auto& row : result.summary) {
    summary[row.source] = {{"total", row.total}, {"relevant", row.relevant},
                           {"share", relevance::format_share(row.share)}, {"share_defined", row.share_defined}};
  }
  counts_["filter"] = {{"items", items.size()}, {"technicality", by_class}, {"summary", std::move(summary)}};
  const auto& all = result.summary.back();
  log_ << "filter: " << all.relevant << " of " << all.total << " items relevant ("
       << relevance::format_share(all.share) << "%)\n";
}

void Runner::embed_hash() {
  auto items = preprocess::load_preprocessed(stage_input(files::kPreprocessed));
  auto set = topics::embed_items(items, config_.embed_dim, config_.seed, config_.threads);
  topics::write_embeddings(set, artifact(files::kEmbeddings));
  counts_["embed-hash"] = {{"items", set.size()}, {"dim", set.dim()}};
  log_ << "embed-hash: " << set.size() << " vectors of dimension " << set.dim() << '\n';
}

void Runner::topics() {
  auto items = preprocess::load_preprocessed(stage_input(files::kPreprocessed));
  auto labels = relevance::load_labels(stage_input(files::kLabels));
  const auto embeddings_path =
      config_.embeddings.empty() ? stage_input(files::kEmbeddings) : external_input(config_.embeddings, "embeddings");
  auto embeddings = topics::load_embeddings(embeddings_path);

  std::vector<std::string> unknown;
  for (const auto& id : embeddings.ids()) {
    auto it = std::lower_bound(items.begin(), items.end(), id,
                               [](const preprocess::PreprocessedItem& item, const std::string& key) { return item.id < key; });
    if (it == items.end() || it->id != id) unknown.push_back(id);
  }
  if (!unknown.empty()) {
    std::string list;
    for (std::size_t i = 0; i < unknown.size() && i < 20; ++i) list += (i ? ", " : "") + unknown[i];
    throw DataError("embeddings reference ids not in the corpus: " + list);
  }

  std::vector<std::string> relevant;
  for (const auto& label : labels) {
    if (label.relevant) relevant.push_back(label.id);
  }
  topics::TopicAssignment assignment;
  if (!relevant.empty()) {
    auto selected = embeddings.select(relevant);
    auto reduced = topics::reduce(selected, config_.target_dim, config_.seed);
    assignment = topics::cluster_density(reduced, config_.density, config_.threads);
  }
  auto table = topics::ctfidf(assignment, items);
  if (table.empty()) warn("no topics found; every relevant item is an outlier");
  auto reps = topics::top_terms(table, config_.top_terms);
  if (!config_.label_map.empty()) {
    for (auto& w : topics::apply_labels(reps, topics::load_label_map(external_input(config_.label_map, "label map")))) {
      warn(std::move(w));
    }
  }
  topics::write_assignments(assignment, artifact(files::kAssignments));
  topics::write_topics(reps, artifact(files::kTopics));

  const auto outliers = static_cast<std::size_t>(std::count(assignment.topics.begin(), assignment.topics.end(), topics::kOutlier));
  counts_["topics"] = {{"items", assignment.size()}, {"topics", reps.size()}, {"outliers", outliers}};
  log_ << "topics: " << reps.size() << " topics, " << outliers << " outliers among " << assignment.size()
       << " relevant items\n";
}

void Runner::eval() {
  auto labels = relevance::load_labels(stage_input(files::kLabels));
  auto truth = evalrep::load_truth(external_input(config_.truth, "truth"));
  auto report = evalrep::evaluate(labels, truth);
  auto out = jsonl::open_output(artifact(files::kEval));
  out << evalrep::to_json(report).dump(2) << '\n';
  if (!out) throw Error("failed writing eval report");
  counts_["eval"] = {{"truth", truth.size()}};
  log_ << "eval: tp=" << report.tp << " fp=" << report.fp << " fn=" << report.fn << " tn=" << report.tn << '\n';
}

void Runner::report() {
  auto items = preprocess::load_preprocessed(stage_input(files::kPreprocessed));
  auto labels = relevance::load_labels(stage_input(files::kLabels));
  auto assignment = topics::load_assignments(stage_input(files::kAssignments));
  auto reps = topics::load_topics(stage_input(files::kTopics));
  const auto sources = evalrep::source_map(items);

  std::map<int, std::string> topic_labels;
  for (const auto& rep : reps) topic_labels[rep.topic] = rep.label;
  auto dist = evalrep::topic_distribution(assignment, topic_labels, sources, config_.share_threshold);
  evalrep::write_topic_distribution_csv(dist, artifact(files::kDistribution));
  evalrep::write_flow_csv(evalrep::technicality_flow(labels, sources), artifact(files::kFlow));

  std::vector<std::vector<std::string>> relevant, irrelevant;
  std::unordered_map<std::string_view, bool> is_relevant;
  for (const auto& label : labels) is_relevant.emplace(label.id, label.relevant);
  for (const auto& item : items) {
    auto it = is_relevant.find(item.id);
    if (it == is_relevant.end()) continue;
    (it->second ? relevant : irrelevant).push_back(item.tokens);
  }
  evalrep::FrequencyDiff diff;
  if (relevant.empty() || irrelevant.empty()) {
    warn("frequency differencing needs relevant and irrelevant items; writing an empty table");
  } else {
    diff = evalrep::frequency_diff(relevant, irrelevant, stopwords(), config_.diff_top_k);
  }
  evalrep::write_frequency_diff_csv(diff, artifact(files::kFrequencyDiff));
  counts_["report"] = {{"sources", dist.size()}};
  log_ << "report: distributions for " << dist.size() << " sources\n";
}

void Runner::write_manifest(Stage stage) {
  const auto settings = effective_settings(config_);
  Json manifest = {{"command", to_string(stage)},
                   {"config", settings},
                   {"config_hash", "fnv1a64:" + hashing::to_hex(hashing::fnv1a64(settings.dump()))},
                   {"inputs", inputs_},
                   {"counts", counts_},
                   {"artifacts", artifacts_},
                   {"warnings", warnings_}};
  auto out = jsonl::open_output(out_ / files::kManifest);
  out << manifest.dump(2) << '\n';
  if (!out) throw Error("failed writing manifest");
}

void check_configured_inputs(const PipelineConfig& c) {
  for (const auto* p : {&c.corpus, &c.keywords, &c.regexes, &c.software, &c.embeddings, &c.label_map, &c.truth,
                        &c.stopwords}) {
    if (!p->empty() && !fs::is_regular_file(*p)) throw MissingInputError(*p);
  }
}

}  // namespace

RunResult run(Stage stage, const PipelineConfig& config, std::ostream& log) {
  RunResult result;
  try {
    config.validate();
    check_configured_inputs(config);
    fs::create_directories(config.output);
    Runner runner(config, log);
    switch (stage) {
      case Stage::ingest: runner.ingest(); break;
      case Stage::preprocess: runner.preprocess(); break;
      case Stage::filter: runner.filter(); break;
      case Stage::embed_hash: runner.embed_hash(); break;
      case Stage::topics: runner.topics(); break;
      case Stage::eval: runner.eval(); break;
      case Stage::report: runner.report(); break;
      case Stage::all:
        runner.ingest();
        runner.preprocess();
        runner.filter();
        if (config.embeddings.empty()) runner.embed_hash();
        runner.topics();
        if (!config.truth.empty()) runner.eval();
        runner.report();
        break;
    }
    runner.write_manifest(stage);
    result.artifacts = runner.artifacts();
    result.artifacts.emplace_back(files::kManifest);
  } catch (const MissingInputError& e) {
    result.exit_code = kMissingInput;
    result.message = e.what();
  } catch (const ConfigError& e) {
    result.exit_code = kConfigFailure;
    result.message = e.what();
  } catch (const std::exception& e) {
    result.exit_code = kDataFailure;
    result.message = e.what();
  }
  if (result.exit_code != kOk) log << "error: " << result.message << '\n';
  return result;
}

}  // namespace ctimine::pipeline
