#include "ctimine/config.hpp"

#include <gtest/gtest.h>

#include "ctimine/common.hpp"
#include "support/temp_dir.hpp"

using namespace ctimine;
using ctimine::testing::TempDir;

TEST(Config, DefaultsValidate) {
  PipelineConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.seed, kDefaultSeed);
  EXPECT_EQ(c.length.min_words, 7u);
  EXPECT_EQ(c.length.max_words, 1000u);
  EXPECT_EQ(c.density.min_samples, 100u);
}

TEST(Config, FromJsonOverridesBase) {
  auto c = config_from_json({{"eps", 0.25}, {"min_samples", 5}, {"overflow", "truncate"}, {"seed", 7}});
  EXPECT_EQ(c.density.eps, 0.25);
  EXPECT_EQ(c.density.min_samples, 5u);
  EXPECT_EQ(c.length.overflow, preprocess::Overflow::truncate);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.target_dim, 5u);
}

TEST(Config, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(config_from_json({{"epsilon", 0.3}}), ConfigError);
  EXPECT_THROW(config_from_json({{"eps", "wide"}}), ConfigError);
  EXPECT_THROW(config_from_json({{"min_samples", -3}}), ConfigError);
  EXPECT_THROW(config_from_json({{"overflow", "clip"}}), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), ConfigError);
}

TEST(Config, ValidateCatchesBadValues) {
  auto bad = [](auto mutate) {
    PipelineConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), ConfigError);
  };
  bad([](PipelineConfig& c) { c.language = "english"; });
  bad([](PipelineConfig& c) { c.length.max_words = 3; });
  bad([](PipelineConfig& c) { c.density.eps = 0.0; });
  bad([](PipelineConfig& c) { c.threads = 0; });
  bad([](PipelineConfig& c) { c.share_threshold = 1.5; });
  bad([](PipelineConfig& c) { c.fuzz.threshold = 0.0; });
}

TEST(Config, FileResolvesRelativePaths) {
  TempDir dir;
  auto path = dir.write("conf/run.json", R"({"corpus":"data/c.jsonl","keywords":"/abs/kw.txt","output":"out"})");
  auto c = load_config(path);
  EXPECT_EQ(c.corpus, (dir.path() / "conf/data/c.jsonl").string());
  EXPECT_EQ(c.keywords, "/abs/kw.txt");
  EXPECT_EQ(c.output, (dir.path() / "conf/out").string());
}

TEST(Config, FileErrorsAreConfigErrors) {
  TempDir dir;
  EXPECT_THROW(load_config(dir.write("bad.json", "{ not json")), ConfigError);
  EXPECT_THROW(load_config(dir / "missing.json"), ConfigError);
}

TEST(Config, EffectiveSettingsSkipRunLocalValues) {
  PipelineConfig a, b;
  b.output = "elsewhere";
  b.threads = 8;
  EXPECT_EQ(effective_settings(a), effective_settings(b));
  b.seed = 1;
  EXPECT_NE(effective_settings(a), effective_settings(b));
}
