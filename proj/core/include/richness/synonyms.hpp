#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "richness/corpus.hpp"

namespace richness {

/// Source lemma -> target lemma options, read from
/// "source_lemma<TAB>upos-or-*<TAB>target_lemma" lines.
class BilingualLexicon {
 public:
  struct Option {
    std::string target;
    std::optional<Upos> upos;  // nullopt = any POS ('*')
  };

  /// Adds one option; returns false (and counts a duplicate) if the exact
  /// (source, upos, target) triple is already present.
  bool add(const std::string& source, std::optional<Upos> upos, const std::string& target);

  /// Options for (source, upos) in file order: entries for that POS plus
  /// '*' entries. Empty if the pair is unknown.
  std::vector<std::string> options(const std::string& source, std::optional<Upos> upos) const;

  /// Options sanctioned for any of the POS tags in `tags`, in file order,
  /// without duplicates.
  std::vector<std::string> options_for_any(const std::string& source, const std::set<Upos>& tags) const;

  bool contains(const std::string& source) const { return entries_.count(source) > 0; }
  std::size_t source_count() const { return entries_.size(); }
  std::size_t duplicate_count() const { return duplicates_; }

  std::string source_language;
  std::string target_language;

 private:
  std::map<std::string, std::vector<Option>> entries_;
  std::size_t duplicates_ = 0;
};

struct TranslationDistribution {
  std::string source_lemma;
  std::vector<std::string> options;
  std::vector<std::uint64_t> counts;  // aligned with options

  std::uint64_t total() const;
  bool operator==(const TranslationDistribution&) const = default;
};

struct SynonymScores {
  double ptf = 0;
  double cdu = 0;
  double syn_ttr = 0;
  std::size_t n_source_words_used = 0;
};

/// Optional header comments "#source_language=xx" / "#target_language=yy" set
/// the lexicon languages. Throws ParseError.
BilingualLexicon load_lexicon(std::istream& source);

inline const std::set<Upos> kDefaultSynonymPos = {Upos::NOUN, Upos::VERB, Upos::ADJ};

/// One distribution per distinct source lemma seen with a POS in `pos_filter`
/// and present in the lexicon, sorted by source lemma. Counts are corpus-global
/// occurrences of each option among the target lemmas (case-folded match).
std::vector<TranslationDistribution> extract_distributions(const AnnotatedCorpus& source,
                                                           const AnnotatedCorpus& target,
                                                           const BilingualLexicon& lexicon,
                                                           const std::set<Upos>& pos_filter = kDefaultSynonymPos);

/// Primary translation prevalence of one distribution (max / sum).
double primary_share(std::span<const std::uint64_t> counts);
/// Cosine distance from the uniform vector of the same dimension.
double uniform_cosine_distance(std::span<const std::uint64_t> counts);

/// Means over distributions with positive total. Throw MetricError when no
/// distribution is usable.
double ptf(std::span<const TranslationDistribution> distributions);
double cdu(std::span<const TranslationDistribution> distributions);
/// Distinct observed option lemmas / their total occurrences.
double syn_ttr(std::span<const TranslationDistribution> distributions);

SynonymScores synonym_scores(std::span<const TranslationDistribution> distributions);

/// Audit export: "source_lemma<TAB>option<TAB>count".
void write_distributions_tsv(std::span<const TranslationDistribution> distributions, std::ostream& out);

}  // namespace richness
