#include "richness/lexical.hpp"

#include <cstdint>
#include <future>
#include <vector>

#include "richness/error.hpp"

namespace richness {
namespace {

constexpr std::size_t kParallelMtldThreshold = std::size_t{1} << 20;

void require_tokens(const AnnotatedCorpus& corpus) {
  if (corpus.empty()) throw EmptyCorpusError();
}

std::vector<std::uint64_t> type_counts(const AnnotatedCorpus& corpus) {
  std::vector<std::uint64_t> counts(corpus.vocabulary().size(), 0);
  for (TypeId id : corpus.surface_ids()) ++counts[id];
  return counts;
}

std::size_t distinct(const std::vector<std::uint64_t>& counts) {
  std::size_t v = 0;
  for (auto c : counts) v += c > 0;
  return v;
}

std::optional<double> yules_i_from_counts(const std::vector<std::uint64_t>& counts) {
  std::uint64_t v = 0;
  long double m2 = 0;
  for (auto c : counts) {
    if (c == 0) continue;
    ++v;
    m2 += static_cast<long double>(c) * static_cast<long double>(c);
  }
  long double denom = m2 - static_cast<long double>(v);
  if (denom <= 0) return std::nullopt;
  long double vv = static_cast<long double>(v);
  return static_cast<double>(vv * vv / denom);
}

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("MTLD threshold must lie in (0, 1)");
}

}  // namespace

double ttr(const AnnotatedCorpus& corpus) {
  require_tokens(corpus);
  return static_cast<double>(distinct(type_counts(corpus))) / static_cast<double>(corpus.size());
}

std::optional<double> yules_i(const AnnotatedCorpus& corpus) {
  require_tokens(corpus);
  return yules_i_from_counts(type_counts(corpus));
}

double mtld_directional(const AnnotatedCorpus& corpus, double threshold, bool reverse) {
  require_tokens(corpus);
  check_threshold(threshold);
  std::span<const TypeId> ids = corpus.surface_ids();
  const std::size_t n = ids.size();

  // seen[id] == factor_index marks membership in the current factor.
  std::vector<std::uint64_t> seen(corpus.vocabulary().size(), 0);
  std::uint64_t factor_index = 1;
  std::size_t factor_types = 0;
  std::size_t factor_tokens = 0;
  double factors = 0.0;
  double running_ttr = 1.0;

  for (std::size_t k = 0; k < n; ++k) {
    TypeId id = ids[reverse ? n - 1 - k : k];
    ++factor_tokens;
    if (seen[id] != factor_index) {
      seen[id] = factor_index;
      ++factor_types;
    }
    running_ttr = static_cast<double>(factor_types) / static_cast<double>(factor_tokens);
    if (running_ttr < threshold) {
      factors += 1.0;
      ++factor_index;
      factor_types = 0;
      factor_tokens = 0;
      running_ttr = 1.0;
    }
  }
  if (factor_tokens > 0) factors += (1.0 - running_ttr) / (1.0 - threshold);
  if (factors == 0.0) return static_cast<double>(n);
  return static_cast<double>(n) / factors;
}

double mtld(const AnnotatedCorpus& corpus, double threshold) {
  require_tokens(corpus);
  check_threshold(threshold);
  if (corpus.size() >= kParallelMtldThreshold) {
    auto backward = std::async(std::launch::async, [&] { return mtld_directional(corpus, threshold, true); });
    double forward = mtld_directional(corpus, threshold, false);
    return (forward + backward.get()) / 2.0;
  }
  return (mtld_directional(corpus, threshold, false) + mtld_directional(corpus, threshold, true)) / 2.0;
}

BandProfile lfp(const AnnotatedCorpus& corpus, const FrequencyTable& reference,
                std::pair<std::size_t, std::size_t> band_edges) {
  require_tokens(corpus);
  if (reference.empty()) throw EmptyCorpusError("reference frequency table");
  if (band_edges.first == 0 || band_edges.second <= band_edges.first) {
    throw ConfigError("band edges must be positive and strictly increasing");
  }

  // Band per vocabulary type, then a single counting pass over tokens.
  const Vocabulary& vocab = corpus.vocabulary();
  std::vector<std::uint8_t> band(vocab.size(), 2);
  for (TypeId id = 0; id < vocab.size(); ++id) {
    if (auto r = reference.rank(vocab.text(id))) {
      band[id] = *r <= band_edges.first ? 0 : *r <= band_edges.second ? 1 : 2;
    }
  }
  std::uint64_t counts[3] = {0, 0, 0};
  for (TypeId id : corpus.surface_ids()) ++counts[band[id]];

  const double n = static_cast<double>(corpus.size());
  BandProfile profile;
  profile.band_edges = band_edges;
  profile.b1_pct = static_cast<double>(counts[0]) / n * 100.0;
  profile.b2_pct = static_cast<double>(counts[1]) / n * 100.0;
  profile.b3_pct = static_cast<double>(counts[2]) / n * 100.0;
  return profile;
}

LexicalScores lexical_scores(const AnnotatedCorpus& corpus, double mtld_threshold) {
  require_tokens(corpus);
  auto counts = type_counts(corpus);
  LexicalScores scores;
  scores.token_count = corpus.size();
  scores.type_count = distinct(counts);
  scores.ttr = static_cast<double>(scores.type_count) / static_cast<double>(scores.token_count);
  scores.yules_i = yules_i_from_counts(counts);
  scores.mtld = mtld(corpus, mtld_threshold);
  return scores;
}

}  // namespace richness
