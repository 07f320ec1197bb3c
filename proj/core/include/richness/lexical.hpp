#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "richness/corpus.hpp"
#include "richness/frequency.hpp"

namespace richness {

/// Token share of three reference-frequency rank bands, in percent.
struct BandProfile {
  double b1_pct = 0;
  double b2_pct = 0;
  double b3_pct = 0;  // the "Beyond 2000" share with default edges
  std::pair<std::size_t, std::size_t> band_edges{1000, 2000};
};

/// Raw (unscaled) values. `yules_i` is nullopt when every type is a hapax.
struct LexicalScores {
  double ttr = 0;
  std::optional<double> yules_i;
  double mtld = 0;
  std::size_t token_count = 0;
  std::size_t type_count = 0;
};

inline constexpr double kDefaultMtldThreshold = 0.72;

/// Distinct surfaces / tokens.
double ttr(const AnnotatedCorpus& corpus);

/// Yule's I = V^2 / (M2 - V) with V the type count and M2 the sum of squared
/// type frequencies. nullopt when M2 == V.
std::optional<double> yules_i(const AnnotatedCorpus& corpus);

/// Bidirectional MTLD with partial-factor credit.
double mtld(const AnnotatedCorpus& corpus, double threshold = kDefaultMtldThreshold);

/// One directional MTLD pass (forward when `reverse` is false).
double mtld_directional(const AnnotatedCorpus& corpus, double threshold, bool reverse);

/// Bands over the reference ranking: rank <= first edge is B1, <= second edge
/// is B2, everything else (including out-of-reference tokens) is B3.
BandProfile lfp(const AnnotatedCorpus& corpus, const FrequencyTable& reference,
                std::pair<std::size_t, std::size_t> band_edges = {1000, 2000});

LexicalScores lexical_scores(const AnnotatedCorpus& corpus, double mtld_threshold = kDefaultMtldThreshold);

}  // namespace richness
