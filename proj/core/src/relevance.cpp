#include "ctimine/relevance.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "ctimine/jsonl.hpp"
#include "ctimine/parallel.hpp"

namespace ctimine::relevance {

std::string_view to_string(Technicality t) noexcept {
  switch (t) {
    case Technicality::technical: return "technical";
    case Technicality::non_technical: return "non_technical";
    case Technicality::both: return "both";
    case Technicality::none: return "none";
  }
  return "none";
}

std::optional<Technicality> parse_technicality(std::string_view text) noexcept {
  if (text == "technical") return Technicality::technical;
  if (text == "non_technical") return Technicality::non_technical;
  if (text == "both") return Technicality::both;
  if (text == "none") return Technicality::none;
  return std::nullopt;
}

RelevanceLabel make_label(std::string id, std::vector<lexicon::Hit> hits) {
  RelevanceLabel label;
  label.id = std::move(id);
  const bool keyword = std::any_of(hits.begin(), hits.end(),
                                   [](const auto& h) { return h.kind == lexicon::HitKind::keyword; });
  const bool technical = std::any_of(hits.begin(), hits.end(),
                                     [](const auto& h) { return h.kind != lexicon::HitKind::keyword; });
  label.relevant = keyword || technical;
  if (keyword && technical) {
    label.technicality = Technicality::both;
  } else if (technical) {
    label.technicality = Technicality::technical;
  } else if (keyword) {
    label.technicality = Technicality::non_technical;
  }
  label.hits = std::move(hits);
  return label;
}

RelevanceLabel classify(const preprocess::PreprocessedItem& item, const lexicon::Lexicon& lex) {
  return make_label(item.id, lex.scan(item.tokens, item.shadow_text));
}

namespace {

std::vector<SourceSummary> tally(const std::vector<Source>& sources,
                                 const std::vector<RelevanceLabel>& labels) {
  std::vector<SourceSummary> rows;
  for (Source s : kAllSources) rows.push_back({std::string(to_string(s))});
  rows.push_back({"all"});
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (auto* row : {&rows[static_cast<std::size_t>(sources[i])], &rows.back()}) {
      ++row->total;
      if (labels[i].relevant) ++row->relevant;
    }
  }
  for (auto& row : rows) {
    row.share_defined = row.total > 0;
    row.share = row.share_defined
                    ? 100.0 * static_cast<double>(row.relevant) / static_cast<double>(row.total)
                    : 0.0;
  }
  return rows;
}

}  // namespace

std::vector<SourceSummary> summarize(const std::vector<preprocess::PreprocessedItem>& items,
                                     const std::vector<RelevanceLabel>& labels) {
  std::unordered_map<std::string_view, Source> by_id;
  for (const auto& item : items) by_id.emplace(item.id, item.source);
  std::vector<Source> sources;
  sources.reserve(labels.size());
  for (const auto& label : labels) {
    auto it = by_id.find(label.id);
    if (it == by_id.end()) throw DataError("label for unknown item \"" + label.id + "\"");
    sources.push_back(it->second);
  }
  return tally(sources, labels);
}

Classification classify_corpus(const std::vector<preprocess::PreprocessedItem>& items,
                               const lexicon::Lexicon& lex, unsigned threads) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items[a].id < items[b].id; });

  Classification result;
  result.labels.resize(items.size());
  parallel_for_chunks(items.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) result.labels[i] = classify(items[order[i]], lex);
  });

  std::vector<Source> sources(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) sources[i] = items[order[i]].source;
  result.summary = tally(sources, result.labels);
  return result;
}

nlohmann::json to_json(const RelevanceLabel& label) {
  nlohmann::json hits = nlohmann::json::array();
  for (const auto& h : label.hits) hits.push_back(lexicon::to_json(h));
  return {{"id", label.id},
          {"relevant", label.relevant},
          {"technicality", to_string(label.technicality)},
          {"hits", std::move(hits)}};
}

RelevanceLabel label_from_json(const nlohmann::json& record) {
  std::vector<lexicon::Hit> hits;
  for (const auto& h : record.at("hits")) hits.push_back(lexicon::hit_from_json(h));
  auto label = make_label(record.at("id").get<std::string>(), std::move(hits));
  const auto technicality = parse_technicality(record.at("technicality").get<std::string>());
  if (record.at("relevant").get<bool>() != label.relevant || technicality != label.technicality) {
    throw DataError("label for \"" + label.id + "\" is inconsistent with its hits");
  }
  return label;
}

void write_labels(const std::vector<RelevanceLabel>& labels, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  for (const auto& label : labels) out << jsonl::dump(to_json(label)) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<RelevanceLabel> load_labels(const std::filesystem::path& path) {
  std::vector<RelevanceLabel> labels;
  jsonl::for_each_record(path, [&](std::size_t, const nlohmann::json& record) {
    labels.push_back(label_from_json(record));
  });
  std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return labels;
}

std::string format_share(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", percent);
  return buf;
}

void write_summary_csv(const std::vector<SourceSummary>& summary, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  out << "source,total,relevant,share,share_defined\n";
  for (const auto& row : summary) {
    out << row.source << ',' << row.total << ',' << row.relevant << ',' << format_share(row.share)
        << ',' << (row.share_defined ? "true" : "false") << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace ctimine::relevance
