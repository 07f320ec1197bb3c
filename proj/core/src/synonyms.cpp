#include "richness/synonyms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <absl/container/flat_hash_map.h>

#include "richness/error.hpp"
#include "richness/text.hpp"

namespace richness {
namespace {

constexpr std::string_view kSourceHeader = "#source_language=";
constexpr std::string_view kTargetHeader = "#target_language=";

void require_lemmatized(const AnnotatedCorpus& corpus, const char* role) {
  if (!corpus.lemmatized()) {
    throw AnnotationLevelError(std::string(role) + " corpus is not lemmatized");
  }
}

bool languages_conflict(const std::string& declared, const std::string& actual) {
  return !declared.empty() && actual != "und" && !actual.empty() && declared != actual;
}

template <typename PerDistribution>
double mean_over_usable(std::span<const TranslationDistribution> distributions, PerDistribution per) {
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& d : distributions) {
    if (d.total() == 0) continue;
    sum += per(std::span<const std::uint64_t>(d.counts));
    ++used;
  }
  if (used == 0) throw MetricError("no translation distribution with a positive total");
  return sum / static_cast<double>(used);
}

}  // namespace

bool BilingualLexicon::add(const std::string& source, std::optional<Upos> upos, const std::string& target) {
  auto& options = entries_[text::fold_case(source)];
  std::string folded_target = text::fold_case(target);
  for (const auto& o : options) {
    if (o.upos == upos && o.target == folded_target) {
      ++duplicates_;
      return false;
    }
  }
  options.push_back({std::move(folded_target), upos});
  return true;
}

std::vector<std::string> BilingualLexicon::options(const std::string& source, std::optional<Upos> upos) const {
  std::set<Upos> tags;
  if (upos) tags.insert(*upos);
  auto it = entries_.find(text::fold_case(source));
  if (it == entries_.end()) return {};
  std::vector<std::string> out;
  for (const auto& o : it->second) {
    bool matches = !o.upos || (upos && *o.upos == *upos);
    if (matches && std::find(out.begin(), out.end(), o.target) == out.end()) out.push_back(o.target);
  }
  return out;
}

std::vector<std::string> BilingualLexicon::options_for_any(const std::string& source,
                                                           const std::set<Upos>& tags) const {
  auto it = entries_.find(text::fold_case(source));
  if (it == entries_.end()) return {};
  std::vector<std::string> out;
  for (const auto& o : it->second) {
    bool matches = !o.upos || tags.count(*o.upos) > 0;
    if (matches && std::find(out.begin(), out.end(), o.target) == out.end()) out.push_back(o.target);
  }
  return out;
}

std::uint64_t TranslationDistribution::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

BilingualLexicon load_lexicon(std::istream& source) {
  BilingualLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    if (view.starts_with(kSourceHeader)) {
      lexicon.source_language = std::string(view.substr(kSourceHeader.size()));
      continue;
    }
    if (view.starts_with(kTargetHeader)) {
      lexicon.target_language = std::string(view.substr(kTargetHeader.size()));
      continue;
    }
    if (view.empty() || view.front() == '#') continue;
    text::validate_utf8(view);

    std::size_t t1 = view.find('\t');
    std::size_t t2 = t1 == std::string_view::npos ? t1 : view.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || view.find('\t', t2 + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected source_lemma<TAB>upos<TAB>target_lemma");
    }
    std::string_view src = view.substr(0, t1);
    std::string_view tag = view.substr(t1 + 1, t2 - t1 - 1);
    std::string_view tgt = view.substr(t2 + 1);
    if (src.empty() || tgt.empty()) throw ParseError(line_no, "empty lemma");
    std::optional<Upos> upos;
    if (tag != "*") {
      upos = parse_upos(tag);
      if (!upos) throw ParseError(line_no, "unknown UPOS tag '" + std::string(tag) + "'");
    }
    lexicon.add(std::string(src), upos, std::string(tgt));
  }
  return lexicon;
}

std::vector<TranslationDistribution> extract_distributions(const AnnotatedCorpus& source,
                                                           const AnnotatedCorpus& target,
                                                           const BilingualLexicon& lexicon,
                                                           const std::set<Upos>& pos_filter) {
  require_lemmatized(source, "source");
  require_lemmatized(target, "target");
  if (languages_conflict(lexicon.source_language, source.language())) {
    throw ConfigError("lexicon source language '" + lexicon.source_language + "' does not match corpus '" +
                      source.language() + "'");
  }
  if (languages_conflict(lexicon.target_language, target.language())) {
    throw ConfigError("lexicon target language '" + lexicon.target_language + "' does not match corpus '" +
                      target.language() + "'");
  }

  // POS tags each source lemma was observed with (restricted to the filter).
  std::map<std::string, std::set<Upos>> observed;
  {
    const Vocabulary& vocab = source.vocabulary();
    std::span<const TypeId> lemmas = source.lemma_ids();
    for (std::size_t i = 0; i < lemmas.size(); ++i) {
      auto tag = source.upos(i);
      if (!tag || pos_filter.count(*tag) == 0) continue;
      observed[text::fold_case(vocab.text(lemmas[i]))].insert(*tag);
    }
  }

  // Single pass over target lemmas, merged by folded spelling.
  absl::flat_hash_map<std::string, std::uint64_t> target_counts;
  {
    const Vocabulary& vocab = target.vocabulary();
    std::vector<std::uint64_t> by_id(vocab.size(), 0);
    for (TypeId id : target.lemma_ids()) ++by_id[id];
    for (TypeId id = 0; id < by_id.size(); ++id) {
      if (by_id[id] > 0) target_counts[text::fold_case(vocab.text(id))] += by_id[id];
    }
  }

  std::vector<TranslationDistribution> out;
  for (const auto& [lemma, tags] : observed) {
    std::vector<std::string> options = lexicon.options_for_any(lemma, tags);
    if (options.empty()) continue;
    TranslationDistribution d{lemma, std::move(options), {}};
    d.counts.reserve(d.options.size());
    for (const auto& option : d.options) {
      auto it = target_counts.find(option);
      d.counts.push_back(it == target_counts.end() ? 0 : it->second);
    }
    out.push_back(std::move(d));
  }
  return out;
}

double primary_share(std::span<const std::uint64_t> counts) {
  std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) throw MetricError("distribution has zero total");
  return static_cast<double>(*std::max_element(counts.begin(), counts.end())) / static_cast<double>(total);
}

double uniform_cosine_distance(std::span<const std::uint64_t> counts) {
  // cos(c, 1) = sum(c) / sqrt(k * sum(c^2)); exact for uniform vectors.
  long double sum = 0;
  long double sum_sq = 0;
  for (auto c : counts) {
    auto x = static_cast<long double>(c);
    sum += x;
    sum_sq += x * x;
  }
  if (sum == 0) throw MetricError("distribution has zero total");
  long double cosine = sum / std::sqrt(static_cast<long double>(counts.size()) * sum_sq);
  return static_cast<double>(std::max<long double>(0.0L, 1.0L - cosine));
}

double ptf(std::span<const TranslationDistribution> distributions) {
  return mean_over_usable(distributions, primary_share);
}

double cdu(std::span<const TranslationDistribution> distributions) {
  return mean_over_usable(distributions, uniform_cosine_distance);
}

double syn_ttr(std::span<const TranslationDistribution> distributions) {
  std::map<std::string, std::uint64_t> observed;
  for (const auto& d : distributions) {
    for (std::size_t i = 0; i < d.options.size(); ++i) {
      if (d.counts[i] > 0) observed.emplace(d.options[i], d.counts[i]);
    }
  }
  std::uint64_t tokens = 0;
  for (const auto& [lemma, count] : observed) tokens += count;
  if (tokens == 0) throw MetricError("no translation option occurs in the target corpus");
  return static_cast<double>(observed.size()) / static_cast<double>(tokens);
}

SynonymScores synonym_scores(std::span<const TranslationDistribution> distributions) {
  SynonymScores scores;
  scores.ptf = ptf(distributions);
  scores.cdu = cdu(distributions);
  scores.syn_ttr = syn_ttr(distributions);
  scores.n_source_words_used = static_cast<std::size_t>(
      std::count_if(distributions.begin(), distributions.end(), [](const auto& d) { return d.total() > 0; }));
  return scores;
}

void write_distributions_tsv(std::span<const TranslationDistribution> distributions, std::ostream& out) {
  for (const auto& d : distributions) {
    for (std::size_t i = 0; i < d.options.size(); ++i) {
      out << d.source_lemma << '\t' << d.options[i] << '\t' << d.counts[i] << '\n';
    }
  }
}

}  // namespace richness
