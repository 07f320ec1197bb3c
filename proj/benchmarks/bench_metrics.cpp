#include <benchmark/benchmark.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "richness/corpus.hpp"
#include "richness/frequency.hpp"
#include "richness/lexical.hpp"
#include "richness/morphology.hpp"
#include "richness/text.hpp"

using namespace richness;

namespace {

// Zipf-distributed synthetic text, 20 words per line.
std::string zipf_text(std::size_t lines, std::size_t vocabulary = 20000, std::uint64_t seed = 7) {
  std::vector<double> weights(vocabulary);
  for (std::size_t r = 0; r < vocabulary; ++r) weights[r] = 1.0 / static_cast<double>(r + 1);
  std::discrete_distribution<std::size_t> zipf(weights.begin(), weights.end());
  std::mt19937_64 rng(seed);
  std::string text;
  for (std::size_t l = 0; l < lines; ++l) {
    for (int w = 0; w < 20; ++w) {
      text += (w == 0 ? "W" : " w") + std::to_string(zipf(rng));
    }
    text += ".\n";
  }
  return text;
}

const std::string& shared_text() {
  static const std::string text = zipf_text(20000);
  return text;
}

const AnnotatedCorpus& shared_corpus() {
  static const AnnotatedCorpus corpus = [] {
    std::istringstream in(shared_text());
    return load_plain_text(in);
  }();
  return corpus;
}

}  // namespace

static void BM_Tokenize(benchmark::State& state) {
  text::Tokenizer tokenizer;
  const std::string& text = shared_text();
  for (auto _ : state) {
    std::size_t count = 0;
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      tokenizer.tokenize(std::string_view(text).substr(start, end - start),
                         [&](std::string_view) { ++count; });
      start = end + 1;
    }
    benchmark::DoNotOptimize(count);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize)->Unit(benchmark::kMillisecond);

static void BM_LoadPlainText(benchmark::State& state) {
  for (auto _ : state) {
    std::istringstream in(shared_text());
    auto corpus = load_plain_text(in);
    benchmark::DoNotOptimize(corpus.size());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * shared_text().size()));
}
BENCHMARK(BM_LoadPlainText)->Unit(benchmark::kMillisecond);

static void BM_FrequencyTable(benchmark::State& state) {
  const auto& corpus = shared_corpus();
  for (auto _ : state) {
    auto table = build_frequency_table(corpus);
    benchmark::DoNotOptimize(table.size());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(BM_FrequencyTable)->Unit(benchmark::kMillisecond);

static void BM_Mtld(benchmark::State& state) {
  const auto& corpus = shared_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(mtld(corpus));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(BM_Mtld)->Unit(benchmark::kMillisecond);

static void BM_YulesI(benchmark::State& state) {
  const auto& corpus = shared_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(yules_i(corpus));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(BM_YulesI)->Unit(benchmark::kMillisecond);

static void BM_Lfp(benchmark::State& state) {
  const auto& corpus = shared_corpus();
  static const FrequencyTable reference = [] {
    std::istringstream in(zipf_text(5000, 20000, 11));
    return build_frequency_table(load_plain_text(in));
  }();
  for (auto _ : state) benchmark::DoNotOptimize(lfp(corpus, reference).b1_pct);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(BM_Lfp)->Unit(benchmark::kMillisecond);

static void BM_ShannonSimpson(benchmark::State& state) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = 1000 / (i + 1) + 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shannon_h(counts));
    benchmark::DoNotOptimize(simpson_d(counts));
  }
}
BENCHMARK(BM_ShannonSimpson)->Arg(4)->Arg(64);

BENCHMARK_MAIN();
