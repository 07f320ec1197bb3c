#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>

#include "richness/corpus.hpp"

namespace richness {

using Paradigm = std::map<std::string, std::uint64_t>;  // wordform -> count

/// lemma -> wordform -> count, with case-folded keys.
class ParadigmTable {
 public:
  void add(const std::string& lemma, const std::string& wordform, std::uint64_t count = 1);

  const std::map<std::string, Paradigm>& paradigms() const { return paradigms_; }
  std::size_t lemma_count() const { return paradigms_.size(); }
  std::uint64_t total_tokens() const { return total_; }
  bool empty() const { return paradigms_.empty(); }

  bool operator==(const ParadigmTable&) const = default;

 private:
  std::map<std::string, Paradigm> paradigms_;
  std::uint64_t total_ = 0;
};

struct MorphAggregate {
  double mean_h = 0;  // nats
  double mean_d = 0;
  std::size_t single_wordform_lemmas = 0;
  std::size_t multi_wordform_lemmas = 0;
};

enum class SimpsonVariant {
  SumOfSquares,  // sum p^2; 1 for a single wordform
  Reciprocal,    // 1 / sum p^2
};

enum class LemmaWeighting { Unweighted, TokenWeighted };

inline const std::set<Upos> kDefaultParadigmExcludedPos = {Upos::PUNCT, Upos::NUM, Upos::SYM};

/// Throws AnnotationLevelError for unlemmatized input, MetricError when no
/// token contributes.
ParadigmTable build_paradigms(const AnnotatedCorpus& corpus,
                              const std::set<Upos>& excluded_pos = kDefaultParadigmExcludedPos);

/// Shannon entropy of the wordform distribution, natural log.
double shannon_h(std::span<const std::uint64_t> counts);
double shannon_h(const Paradigm& paradigm);

double simpson_d(std::span<const std::uint64_t> counts, SimpsonVariant variant = SimpsonVariant::SumOfSquares);
double simpson_d(const Paradigm& paradigm, SimpsonVariant variant = SimpsonVariant::SumOfSquares);

struct AggregateOptions {
  std::size_t min_wordforms = 2;
  LemmaWeighting weighting = LemmaWeighting::Unweighted;
  SimpsonVariant simpson = SimpsonVariant::SumOfSquares;
};

/// Means of H and D over lemmas with at least `min_wordforms` wordforms,
/// summed in lemma order. Throws MetricError if no lemma qualifies.
MorphAggregate aggregate(const ParadigmTable& table, const AggregateOptions& options = {});

/// "lemma<TAB>wordform<TAB>count" lines.
void write_paradigms_tsv(const ParadigmTable& table, std::ostream& out);
ParadigmTable read_paradigms_tsv(std::istream& in);

}  // namespace richness
