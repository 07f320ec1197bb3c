#pragma once

#include <cstddef>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "richness/corpus.hpp"
#include "richness/morphology.hpp"
#include "richness/report.hpp"

namespace richness::cli {

/// Every knob that affects metric values or their display.
struct RunConfig {
  bool lowercase = true;
  /// Token exclusion is opt-in; `unk_tokens` is only applied when enabled.
  bool exclude_unk = false;
  std::set<std::string> unk_tokens{"UNK"};
  std::pair<std::size_t, std::size_t> band_edges{1000, 2000};
  double mtld_threshold = 0.72;
  std::set<Upos> pos_filter{Upos::NOUN, Upos::VERB, Upos::ADJ};
  std::size_t min_wordforms = 2;
  double synttr_scale = 100000;
  double ptf_scale = 1;
  double cdu_scale = 1;
  std::set<Upos> paradigm_pos_excluded{Upos::PUNCT, Upos::NUM, Upos::SYM};
  SimpsonVariant simpson = SimpsonVariant::SumOfSquares;
  LemmaWeighting lemma_weighting = LemmaWeighting::Unweighted;

  /// Throws ConfigError.
  void validate() const;

  /// Applies one "key=value" setting. Throws ConfigError on unknown keys or
  /// bad values.
  void set(std::string_view key, std::string_view value);

  /// Sorted "key=value" lines covering every field.
  std::string canonical() const;
  /// Hex digest of canonical().
  std::string digest() const;
  /// Digest of the fields that change tokens (case folding and exclusion).
  std::string tokenization_digest() const;

  Scaling scaling() const;
};

/// Reads "key=value" lines; blank lines and '#' comments are ignored.
RunConfig load_config(std::istream& in, RunConfig base = {});

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace richness::cli
