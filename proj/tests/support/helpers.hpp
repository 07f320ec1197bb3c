#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "richness/corpus.hpp"

namespace testing {

/// |a - b| <= rel * max(|a|, |b|), with an absolute floor for values at zero.
inline bool close(double a, double b, double rel = 1e-12, double abs_floor = 1e-15) {
  return std::fabs(a - b) <= std::max(rel * std::max(std::fabs(a), std::fabs(b)), abs_floor);
}

/// Random token list of length in [1, max_len] over the first `alphabet`
/// letters starting at 'a'.
inline std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t max_len, int alphabet = 5) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  std::vector<std::string> toks(len(rng));
  for (auto& t : toks) t = std::string(1, static_cast<char>('a' + sym(rng)));
  return toks;
}

inline std::vector<std::string> surfaces(const richness::AnnotatedCorpus& corpus) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) out.emplace_back(corpus.surface(i));
  return out;
}

inline richness::AnnotatedCorpus corpus_of(const std::vector<std::string>& toks) {
  return richness::AnnotatedCorpus::from_tokens(toks);
}

}  // namespace testing
