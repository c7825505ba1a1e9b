#include <benchmark/benchmark.h>

#include "bench_text.hpp"
#include "ctimine/config.hpp"
#include "ctimine/preprocess.hpp"
#include "ctimine/topics.hpp"

namespace {

using namespace ctimine;

std::vector<preprocess::PreprocessedItem> items(std::size_t n) {
  std::vector<preprocess::PreprocessedItem> out;
  std::size_t i = 0;
  for (auto& t : bench::texts(n)) out.push_back(preprocess::make_candidate({std::to_string(i++), Source::forum, {}, {}, t, {}}));
  return out;
}

void BM_EmbedItems(benchmark::State& state) {
  const auto corpus = items(1000);
  for (auto _ : state) benchmark::DoNotOptimize(topics::embed_items(corpus, 256, kDefaultSeed));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_EmbedItems)->Unit(benchmark::kMillisecond);

void BM_Reduce(benchmark::State& state) {
  const auto set = topics::embed_items(items(1000), 256, kDefaultSeed);
  for (auto _ : state) benchmark::DoNotOptimize(topics::reduce(set, 5, kDefaultSeed));
}
BENCHMARK(BM_Reduce)->Unit(benchmark::kMillisecond);

void BM_ClusterDensity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto set = topics::reduce(topics::embed_items(items(n), 256, kDefaultSeed), 5, kDefaultSeed);
  for (auto _ : state) benchmark::DoNotOptimize(topics::cluster_density(set, {0.35, 5, 1}));
}
BENCHMARK(BM_ClusterDensity)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
