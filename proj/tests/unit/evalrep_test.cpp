#include "ctimine/evalrep.hpp"

#include <cmath>
#include <numeric>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "ctimine/common.hpp"
#include "support/temp_dir.hpp"

using namespace ctimine;
using namespace ctimine::evalrep;
using ctimine::testing::TempDir;
using relevance::RelevanceLabel;

namespace {

RelevanceLabel label(std::string id, std::vector<lexicon::HitKind> kinds) {
  std::vector<lexicon::Hit> hits;
  std::size_t pos = 0;
  for (auto k : kinds) {
    hits.push_back({k, k == lexicon::HitKind::keyword ? "leak" : k == lexicon::HitKind::regex ? "md5" : "anchor", pos,
                    pos + 1});
    ++pos;
  }
  return relevance::make_label(std::move(id), std::move(hits));
}

std::vector<std::vector<std::string>> docs(std::initializer_list<std::string> texts) {
  std::vector<std::vector<std::string>> out;
  for (const auto& t : texts) out.push_back(text::tokenize(t));
  return out;
}

}  // namespace

TEST(Evaluate, ThreeOneOneIsExactlyThreeQuarters) {
  auto r = make_report(3, 1, 1, 0);
  ASSERT_TRUE(r.precision && r.recall && r.f1);
  EXPECT_EQ(*r.precision, 0.75);
  EXPECT_EQ(*r.recall, 0.75);
  EXPECT_EQ(*r.f1, 0.75);
}

TEST(Evaluate, PerfectAndUndefined) {
  auto perfect = make_report(4, 0, 0, 2);
  EXPECT_EQ(*perfect.precision, 1.0);
  EXPECT_EQ(*perfect.recall, 1.0);
  EXPECT_EQ(*perfect.f1, 1.0);

  auto none = make_report(0, 0, 3, 1);
  EXPECT_FALSE(none.precision);
  EXPECT_EQ(*none.recall, 0.0);
  EXPECT_FALSE(none.f1);
  auto j = to_json(none);
  EXPECT_TRUE(j["precision"].is_null());
  EXPECT_FALSE(j["precision_defined"].get<bool>());
  EXPECT_TRUE(j["recall_defined"].get<bool>());
  EXPECT_EQ(j.dump().find("NaN"), std::string::npos);

  auto zero = make_report(0, 2, 2, 0);  // both defined but 0: harmonic mean undefined
  EXPECT_EQ(*zero.precision, 0.0);
  EXPECT_FALSE(zero.f1);
  auto empty = make_report(0, 0, 0, 0);
  EXPECT_FALSE(empty.precision || empty.recall || empty.f1);
}

TEST(Evaluate, CountsOverTruthIdsOnly) {
  std::vector<RelevanceLabel> preds = {label("a", {lexicon::HitKind::keyword}), label("b", {}),
                                       label("c", {lexicon::HitKind::regex}), label("d", {}), label("e", {})};
  Truth truth = {{"a", true}, {"b", true}, {"c", false}, {"d", false}};
  auto r = evaluate(preds, truth);
  EXPECT_EQ(r.tp, 1u);
  EXPECT_EQ(r.fn, 1u);
  EXPECT_EQ(r.fp, 1u);
  EXPECT_EQ(r.tn, 1u);
  EXPECT_EQ(r.tp + r.fp + r.fn + r.tn, truth.size());

  truth.push_back({"ghost", true});
  try {
    evaluate(preds, truth);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
}

TEST(Evaluate, RandomConfusionArithmetic) {
  std::mt19937_64 rng(83);
  std::uniform_int_distribution<std::size_t> n(0, 20);
  for (int i = 0; i < 1000; ++i) {
    const auto tp = n(rng), fp = n(rng), fn = n(rng);
    auto r = make_report(tp, fp, fn, n(rng));
    EXPECT_EQ(r.precision.has_value(), tp + fp > 0);
    EXPECT_EQ(r.recall.has_value(), tp + fn > 0);
    if (r.f1) {
      EXPECT_FALSE(std::isnan(*r.f1));
      EXPECT_NEAR(*r.f1, 2.0 * tp / static_cast<double>(2 * tp + fp + fn), 1e-12);
    }
  }
}

TEST(Evaluate, TruthFile) {
  TempDir dir;
  auto p = dir.write("t.jsonl", "{\"id\":\"a\",\"label\":true}\n{\"id\":\"b\",\"label\":false}\n");
  EXPECT_EQ(load_truth(p), (Truth{{"a", true}, {"b", false}}));
  auto bad = dir.write("bad.jsonl", "{\"id\":\"a\",\"label\":\"yes\"}\n");
  EXPECT_THROW(load_truth(bad), DataError);
}

TEST(FrequencyDiff, HackVersusShip) {
  auto d = frequency_diff(docs({"hack hack data"}), docs({"ship ship item"}), {}, 10);
  ASSERT_FALSE(d.positive.empty());
  ASSERT_FALSE(d.negative.empty());
  EXPECT_EQ(d.positive.front().term, "hack");
  EXPECT_NEAR(d.positive.front().diff, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(d.negative.front().term, "ship");
  EXPECT_NEAR(d.negative.front().diff, -2.0 / 3.0, 1e-12);
}

TEST(FrequencyDiff, ZeroDiffAndStopwordsExcluded) {
  text::WordSet stop = {"the"};
  auto d = frequency_diff(docs({"the hack same"}), docs({"the ship same"}), stop, 1);
  for (const auto& t : d.all) EXPECT_NE(t.term, "the");
  ASSERT_EQ(d.positive.size(), 1u);
  ASSERT_EQ(d.negative.size(), 1u);
  EXPECT_EQ(d.positive[0].term, "hack");
  EXPECT_EQ(d.negative[0].term, "ship");
  for (const auto& t : d.all) {
    if (t.term == "same") EXPECT_EQ(t.diff, 0.0);
  }
}

TEST(FrequencyDiff, SumsToZeroWithoutStopwordRemoval) {
  std::mt19937_64 rng(89);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g"};
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1), len(1, 15);
  for (int round = 0; round < 100; ++round) {
    std::vector<std::vector<std::string>> rel(3), irr(4);
    for (auto* cls : {&rel, &irr}) {
      for (auto& d : *cls) {
        for (auto n = len(rng); n > 0; --n) d.push_back(vocab[pick(rng)]);
      }
    }
    auto d = frequency_diff(rel, irr, {}, 3);
    double sum = 0.0, rel_sum = 0.0, irr_sum = 0.0;
    for (const auto& t : d.all) {
      sum += t.diff;
      rel_sum += t.freq_relevant;
      irr_sum += t.freq_irrelevant;
    }
    EXPECT_NEAR(sum, 0.0, 1e-12);
    EXPECT_NEAR(rel_sum, 1.0, 1e-12);
    EXPECT_NEAR(irr_sum, 1.0, 1e-12);
    EXPECT_LE(d.positive.size(), 3u);
  }
}

TEST(FrequencyDiff, EmptyClassIsError) {
  EXPECT_THROW(frequency_diff({}, docs({"x"}), {}, 5), DataError);
  EXPECT_THROW(frequency_diff(docs({"x"}), {}, {}, 5), DataError);
}

TEST(FrequencyDiff, Csv) {
  TempDir dir;
  write_frequency_diff_csv(frequency_diff(docs({"hack hack data"}), docs({"ship ship item"}), {}, 1), dir / "f.csv");
  EXPECT_EQ(ctimine::testing::slurp(dir / "f.csv"),
            "direction,rank,term,freq_relevant,freq_irrelevant,diff\n"
            "relevant,1,hack,0.6666666667,0,0.6666666667\n"
            "not_relevant,1,ship,0,0.6666666667,-0.6666666667\n");
}

TEST(TopicDistribution, SharesAndThreshold) {
  topics::TopicAssignment a;
  SourceMap sources;
  for (int i = 0; i < 12; ++i) {
    a.ids.push_back("i" + std::to_string(10 + i));
    a.topics.push_back(i < 9 ? 0 : i == 9 ? 1 : topics::kOutlier);
    sources[a.ids.back()] = Source::forum;
  }
  auto dist = topic_distribution(a, {{0, "Carding"}}, sources, 0.02);
  ASSERT_EQ(dist.size(), 1u);
  EXPECT_EQ(dist[0].assigned, 10u);  // outliers excluded
  ASSERT_EQ(dist[0].topics.size(), 2u);
  EXPECT_EQ(dist[0].topics[0].label, "Carding");
  EXPECT_NEAR(dist[0].topics[0].share, 0.9, 1e-12);
  EXPECT_NEAR(dist[0].topics[1].share, 0.1, 1e-12);
  EXPECT_EQ(dist[0].topics[1].label, "topic-1");
  EXPECT_TRUE(dist[0].topics[1].main);
}

TEST(TopicDistribution, OnePercentTopicHiddenFromMainView) {
  topics::TopicAssignment a;
  SourceMap sources;
  for (int i = 0; i < 100; ++i) {
    a.ids.push_back("i" + std::to_string(100 + i));
    a.topics.push_back(i == 0 ? 1 : 0);
    sources[a.ids.back()] = Source::darknet;
  }
  auto dist = topic_distribution(a, {}, sources);
  ASSERT_EQ(dist[0].topics.size(), 2u);
  EXPECT_FALSE(dist[0].topics[1].main);
  EXPECT_TRUE(dist[0].topics[0].main);
}

TEST(TopicDistribution, SharesSumToOnePerSource) {
  std::mt19937_64 rng(97);
  std::uniform_int_distribution<int> topic(-1, 6), source(0, 2);
  topics::TopicAssignment a;
  SourceMap sources;
  for (int i = 0; i < 500; ++i) {
    a.ids.push_back("x" + std::to_string(1000 + i));
    a.topics.push_back(topic(rng));
    sources[a.ids.back()] = kAllSources[source(rng)];
  }
  for (const auto& d : topic_distribution(a, {}, sources)) {
    double sum = 0.0;
    for (const auto& t : d.topics) sum += t.share;
    EXPECT_NEAR(sum, 1.0, 1e-9) << d.source;
  }
  a.ids.push_back("unknown");
  a.topics.push_back(0);
  EXPECT_THROW(topic_distribution(a, {}, sources), DataError);
}

TEST(TechnicalityFlow, SourceEdgesAndShares) {
  using lexicon::HitKind;
  std::vector<RelevanceLabel> labels = {label("a", {HitKind::keyword}), label("b", {HitKind::keyword}),
                                        label("c", {HitKind::regex}), label("d", {HitKind::keyword, HitKind::software}),
                                        label("e", {})};
  SourceMap sources = {{"a", Source::forum}, {"b", Source::forum}, {"c", Source::forum}, {"d", Source::forum},
                       {"e", Source::forum}};
  auto flow = technicality_flow(labels, sources);
  std::map<std::string, std::size_t> source_edges;
  for (const auto& e : flow.edges) {
    if (e.stage == "source") source_edges[e.to] = e.weight;
  }
  EXPECT_EQ(source_edges, (std::map<std::string, std::size_t>{{"both", 1}, {"non_technical", 2}, {"technical", 1}}));
  ASSERT_EQ(flow.technical_share.size(), 1u);
  EXPECT_NEAR(flow.technical_share[0].second, 2.0 / 5.0, 1e-12);

  auto empty = technicality_flow({}, {});
  EXPECT_TRUE(empty.edges.empty());
}

TEST(TechnicalityFlow, CsvCarriesFormatVersion) {
  TempDir dir;
  std::vector<RelevanceLabel> labels = {label("a", {lexicon::HitKind::regex})};
  write_flow_csv(technicality_flow(labels, {{"a", Source::chat}}), dir / "f.csv");
  EXPECT_EQ(ctimine::testing::slurp(dir / "f.csv"),
            "format_version,stage,from,to,weight\n"
            "1,source,chat,technical,1\n"
            "1,kind,technical,regex,1\n"
            "1,term,regex,md5,1\n"
            "1,technical_share,chat,technical_or_both,1\n");
}

TEST(Histogram, Examples) {
  auto single = wordcount_histogram({{Source::forum, 10}, {Source::forum, 10}});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].count, 2u);
  EXPECT_DOUBLE_EQ(single[0].lower, 1.0);

  auto spread = wordcount_histogram({{Source::chat, 10}, {Source::chat, 1000}});
  ASSERT_EQ(spread.size(), 20u);
  EXPECT_DOUBLE_EQ(spread.front().lower, 1.0);
  EXPECT_EQ(spread.front().count, 1u);
  EXPECT_DOUBLE_EQ(spread.back().upper, 3.0);
  EXPECT_EQ(spread.back().count, 1u);
  std::size_t total = 0;
  for (const auto& b : spread) total += b.count;
  EXPECT_EQ(total, 2u);

  EXPECT_TRUE(wordcount_histogram({}).empty());
  EXPECT_THROW(wordcount_histogram({{Source::chat, 3}}, 0), ConfigError);
}

TEST(Histogram, PerSourceCountsMatchInput) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> wc(1, 5000);
  std::vector<std::pair<Source, std::size_t>> counts;
  std::map<std::string, std::size_t> expected;
  for (int i = 0; i < 1000; ++i) {
    const auto s = kAllSources[static_cast<std::size_t>(i % 3)];
    counts.emplace_back(s, wc(rng));
    ++expected[std::string(to_string(s))];
  }
  std::map<std::string, std::size_t> got;
  for (const auto& b : wordcount_histogram(counts)) got[b.source] += b.count;
  EXPECT_EQ(got, expected);
}
