#include "ctimine/evalrep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "ctimine/jsonl.hpp"

namespace ctimine::evalrep {

namespace {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

// ---------------------------------------------------------------------------
// Evaluation

EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
  EvalReport r{tp, fp, fn, tn, {}, {}, {}};
  r.precision = ratio(tp, tp + fp);
  r.recall = ratio(tp, tp + fn);
  if (r.precision && r.recall && *r.precision + *r.recall > 0.0) {
    r.f1 = 2.0 * *r.precision * *r.recall / (*r.precision + *r.recall);
  }
  return r;
}

Truth load_truth(const std::filesystem::path& path) {
  Truth truth;
  jsonl::for_each_record(path, [&](std::size_t, const nlohmann::json& record) {
    truth.emplace_back(record.at("id").get<std::string>(), record.at("label").get<bool>());
  });
  return truth;
}

EvalReport evaluate(const std::vector<relevance::RelevanceLabel>& predictions, const Truth& truth) {
  std::unordered_map<std::string_view, bool> predicted;
  for (const auto& label : predictions) predicted.emplace(label.id, label.relevant);
  std::vector<std::string> missing;
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto& [id, actual] : truth) {
    auto it = predicted.find(id);
    if (it == predicted.end()) {
      missing.push_back(id);
      continue;
    }
    const bool p = it->second;
    if (p && actual) ++tp;
    else if (p) ++fp;
    else if (actual) ++fn;
    else ++tn;
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size(); ++i) list += (i ? ", " : "") + missing[i];
    throw DataError("truth ids missing from predictions: " + list);
  }
  return make_report(tp, fp, fn, tn);
}

nlohmann::json to_json(const EvalReport& report) {
  auto metric = [](const std::optional<double>& m) -> nlohmann::json {
    return m ? nlohmann::json(*m) : nlohmann::json(nullptr);
  };
  return {{"tp", report.tp},
          {"fp", report.fp},
          {"fn", report.fn},
          {"tn", report.tn},
          {"precision", metric(report.precision)},
          {"recall", metric(report.recall)},
          {"f1", metric(report.f1)},
          {"precision_defined", report.precision.has_value()},
          {"recall_defined", report.recall.has_value()},
          {"f1_defined", report.f1.has_value()}};
}

// ---------------------------------------------------------------------------
// Word-frequency differencing

FrequencyDiff frequency_diff(const std::vector<std::vector<std::string>>& relevant,
                             const std::vector<std::vector<std::string>>& irrelevant,
                             const text::WordSet& stopwords, std::size_t k) {
  if (relevant.empty() || irrelevant.empty()) throw DataError("frequency_diff needs two non-empty classes");

  std::map<std::string, std::pair<double, double>> counts;
  double total_rel = 0.0, total_irr = 0.0;
  for (const auto& doc : relevant) {
    for (const auto& t : doc) {
      if (stopwords.count(t)) continue;
      counts[t].first += 1.0;
      total_rel += 1.0;
    }
  }
  for (const auto& doc : irrelevant) {
    for (const auto& t : doc) {
      if (stopwords.count(t)) continue;
      counts[t].second += 1.0;
      total_irr += 1.0;
    }
  }

  FrequencyDiff out;
  for (const auto& [term, c] : counts) {
    TermDiff d{term, total_rel > 0 ? c.first / total_rel : 0.0, total_irr > 0 ? c.second / total_irr : 0.0, 0.0};
    d.diff = d.freq_relevant - d.freq_irrelevant;
    out.all.push_back(d);
    if (d.diff > 0) out.positive.push_back(d);
    if (d.diff < 0) out.negative.push_back(d);
  }
  std::sort(out.positive.begin(), out.positive.end(), [](const auto& a, const auto& b) {
    return a.diff != b.diff ? a.diff > b.diff : a.term < b.term;
  });
  std::sort(out.negative.begin(), out.negative.end(), [](const auto& a, const auto& b) {
    return a.diff != b.diff ? a.diff < b.diff : a.term < b.term;
  });
  if (out.positive.size() > k) out.positive.resize(k);
  if (out.negative.size() > k) out.negative.resize(k);
  return out;
}

void write_frequency_diff_csv(const FrequencyDiff& diff, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  out << "direction,rank,term,freq_relevant,freq_irrelevant,diff\n";
  auto emit = [&](std::string_view direction, const std::vector<TermDiff>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << direction << ',' << i + 1 << ',' << csv_field(r.term) << ',' << format_number(r.freq_relevant)
          << ',' << format_number(r.freq_irrelevant) << ',' << format_number(r.diff) << '\n';
    }
  };
  emit("relevant", diff.positive);
  emit("not_relevant", diff.negative);
  if (!out) throw Error("failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// Topic distribution

SourceMap source_map(const std::vector<preprocess::PreprocessedItem>& items) {
  SourceMap map;
  map.reserve(items.size());
  for (const auto& item : items) map.emplace(item.id, item.source);
  return map;
}

std::vector<SourceDistribution> topic_distribution(const topics::TopicAssignment& assignment,
                                                   const std::map<int, std::string>& labels,
                                                   const SourceMap& sources, double threshold) {
  std::map<Source, std::map<int, std::size_t>> counts;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto it = sources.find(assignment.ids[i]);
    if (it == sources.end()) throw DataError("no source for assigned id \"" + assignment.ids[i] + "\"");
    if (assignment.topics[i] == topics::kOutlier) continue;
    ++counts[it->second][assignment.topics[i]];
  }
  std::vector<SourceDistribution> out;
  for (Source s : kAllSources) {
    auto it = counts.find(s);
    if (it == counts.end()) continue;
    SourceDistribution dist{std::string(to_string(s)), 0, {}};
    for (const auto& [topic, count] : it->second) dist.assigned += count;
    for (const auto& [topic, count] : it->second) {
      auto label = labels.find(topic);
      const double share = static_cast<double>(count) / static_cast<double>(dist.assigned);
      dist.topics.push_back({topic, label != labels.end() ? label->second : topics::default_label(topic), count,
                             share, share > threshold});
    }
    out.push_back(std::move(dist));
  }
  return out;
}

void write_topic_distribution_csv(const std::vector<SourceDistribution>& dist, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  out << "source,topic,label,count,share,main\n";
  for (const auto& d : dist) {
    for (const auto& t : d.topics) {
      out << d.source << ',' << t.topic << ',' << csv_field(t.label) << ',' << t.count << ','
          << format_number(t.share) << ',' << (t.main ? "true" : "false") << '\n';
    }
  }
  if (!out) throw Error("failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// Technicality flow

FlowReport technicality_flow(const std::vector<relevance::RelevanceLabel>& labels, const SourceMap& sources) {
  using relevance::Technicality;
  // (stage rank, from, to) -> weight
  std::map<std::tuple<int, std::string, std::string>, std::size_t> edges;
  std::map<Source, std::pair<std::size_t, std::size_t>> per_source;  // (technical or both, total)
  for (const auto& label : labels) {
    auto it = sources.find(label.id);
    if (it == sources.end()) throw DataError("no source for label \"" + label.id + "\"");
    auto& tally = per_source[it->second];
    ++tally.second;
    if (!label.relevant) continue;
    const std::string technicality(relevance::to_string(label.technicality));
    if (label.technicality == Technicality::technical || label.technicality == Technicality::both) ++tally.first;
    ++edges[{0, std::string(to_string(it->second)), technicality}];
    for (const auto& hit : label.hits) {
      const std::string kind(lexicon::to_string(hit.kind));
      ++edges[{1, technicality, kind}];
      ++edges[{2, kind, hit.term}];
    }
  }
  static constexpr const char* kStages[] = {"source", "kind", "term"};
  FlowReport report;
  for (const auto& [key, weight] : edges) {
    report.edges.push_back({kStages[std::get<0>(key)], std::get<1>(key), std::get<2>(key), weight});
  }
  for (Source s : kAllSources) {
    auto it = per_source.find(s);
    if (it == per_source.end() || it->second.second == 0) continue;
    report.technical_share.emplace_back(
        std::string(to_string(s)),
        static_cast<double>(it->second.first) / static_cast<double>(it->second.second));
  }
  return report;
}

void write_flow_csv(const FlowReport& flow, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  out << "format_version,stage,from,to,weight\n";
  for (const auto& e : flow.edges) {
    out << kReportFormatVersion << ',' << e.stage << ',' << csv_field(e.from) << ',' << csv_field(e.to) << ','
        << e.weight << '\n';
  }
  for (const auto& [source, share] : flow.technical_share) {
    out << kReportFormatVersion << ",technical_share," << source << ",technical_or_both," << format_number(share)
        << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// Word-count histogram

std::vector<HistogramBin> wordcount_histogram(const std::vector<std::pair<Source, std::size_t>>& counts,
                                              std::size_t bins) {
  if (bins == 0) throw ConfigError("histogram needs at least one bin");
  std::vector<std::pair<Source, double>> logs;
  for (const auto& [source, wc] : counts) {
    if (wc > 0) logs.emplace_back(source, std::log10(static_cast<double>(wc)));
  }
  if (logs.empty()) return {};
  double lo = logs.front().second, hi = lo;
  for (const auto& [s, x] : logs) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (hi == lo) bins = 1;
  const double width = (hi - lo) / static_cast<double>(bins);

  std::map<Source, std::vector<std::size_t>> per_source;
  for (const auto& [source, x] : logs) {
    auto& slots = per_source[source];
    slots.resize(bins, 0);
    std::size_t index = 0;
    if (width > 0) index = std::min(bins - 1, static_cast<std::size_t>(std::floor((x - lo) / width)));
    ++slots[index];
  }
  std::vector<HistogramBin> out;
  for (Source s : kAllSources) {
    auto it = per_source.find(s);
    if (it == per_source.end()) continue;
    for (std::size_t b = 0; b < bins; ++b) {
      const double lower = lo + width * static_cast<double>(b);
      const double upper = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
      out.push_back({std::string(to_string(s)), b, lower, upper, it->second[b]});
    }
  }
  return out;
}

void write_histogram_csv(const std::vector<HistogramBin>& bins, const std::filesystem::path& path) {
  auto out = jsonl::open_output(path);
  out << "format_version,source,bin,lower,upper,count\n";
  for (const auto& b : bins) {
    out << kReportFormatVersion << ',' << b.source << ',' << b.bin << ',' << format_number(b.lower) << ','
        << format_number(b.upper) << ',' << b.count << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace ctimine::evalrep
