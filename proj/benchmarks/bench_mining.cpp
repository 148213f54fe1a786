#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ig/ig.hpp"

namespace {

// Flow-like rows: each column has a dominant code and a short tail.
std::vector<ig::EncodedInstance> rows(std::size_t n, std::size_t width, ig::Label label, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ig::EncodedInstance> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].codes.resize(width);
    for (std::size_t c = 0; c < width; ++c) {
      std::bernoulli_distribution dominant(0.55 + 0.04 * static_cast<double>((c * 7 + seed) % 10));
      std::geometric_distribution<ig::Code> tail(0.5);
      out[i].codes[c] = dominant(rng) ? 0 : std::min<ig::Code>(1 + tail(rng), 7);
    }
    out[i].label = label;
    out[i].origin = i;
  }
  return out;
}

std::vector<ig::EncodedInstance> train(std::size_t per_class, std::size_t width) {
  auto t = rows(per_class, width, ig::Label::normal, 1);
  const auto a = rows(per_class, width, ig::Label::anomalous, 4);
  t.insert(t.end(), a.begin(), a.end());
  return t;
}

void BM_PairwisePatterns(benchmark::State& state) {
  const auto xs = rows(static_cast<std::size_t>(state.range(0)), 42, ig::Label::normal, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ig::pairwise_patterns(xs, {}));
  const auto n = static_cast<std::int64_t>(xs.size());
  state.SetItemsProcessed(state.iterations() * n * (n - 1) / 2);
}
BENCHMARK(BM_PairwisePatterns)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FilterCoherent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto patterns = ig::pairwise_patterns(rows(n, 42, ig::Label::normal, 1), {});
  const auto opposite = rows(n, 42, ig::Label::anomalous, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ig::filter_coherent(patterns, opposite));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(patterns.size()));
}
BENCHMARK(BM_FilterCoherent)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Mine(benchmark::State& state) {
  const auto t = train(static_cast<std::size_t>(state.range(0)), 42);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ig::mine(t, {}, threads));
}
BENCHMARK(BM_Mine)->Args({500, 1})->Args({500, 4})->Args({1000, 1})->Unit(benchmark::kMillisecond);

void BM_ScoreIndexed(benchmark::State& state) {
  const auto bank = ig::mine(train(500, 42), {});
  const auto tests = train(static_cast<std::size_t>(state.range(0)), 42);
  const ig::ScoringIndex index(bank, 2);
  for (auto _ : state) {
    for (const auto& t : tests) benchmark::DoNotOptimize(index.score(t));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tests.size()));
}
BENCHMARK(BM_ScoreIndexed)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_ScoreDirect(benchmark::State& state) {
  const auto bank = ig::mine(train(500, 42), {});
  const auto tests = train(static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) {
    for (const auto& t : tests) benchmark::DoNotOptimize(ig::score_instance(t, bank, {2, 0.1}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tests.size()));
}
BENCHMARK(BM_ScoreDirect)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ClassifyBatch(benchmark::State& state) {
  const auto bank = ig::mine(train(500, 42), {});
  const auto tests = train(2000, 42);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ig::classify_batch(tests, bank, {2, 0.1}, threads));
}
BENCHMARK(BM_ClassifyBatch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
