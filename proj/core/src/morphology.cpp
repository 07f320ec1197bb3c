#include "richness/morphology.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "richness/error.hpp"
#include "richness/text.hpp"

namespace richness {
namespace {

std::vector<std::uint64_t> counts_of(const Paradigm& paradigm) {
  std::vector<std::uint64_t> counts;
  counts.reserve(paradigm.size());
  for (const auto& [form, count] : paradigm) counts.push_back(count);
  return counts;
}

double total_of(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw MetricError("empty paradigm");
  return static_cast<double>(total);
}

}  // namespace

void ParadigmTable::add(const std::string& lemma, const std::string& wordform, std::uint64_t count) {
  if (count == 0) return;
  paradigms_[text::fold_case(lemma)][text::fold_case(wordform)] += count;
  total_ += count;
}

ParadigmTable build_paradigms(const AnnotatedCorpus& corpus, const std::set<Upos>& excluded_pos) {
  if (!corpus.lemmatized()) throw AnnotationLevelError("paradigms require a lemmatized corpus");

  // Count distinct (lemma id, surface id) pairs first, then fold once per pair.
  std::map<std::pair<TypeId, TypeId>, std::uint64_t> pairs;
  std::span<const TypeId> surfaces = corpus.surface_ids();
  std::span<const TypeId> lemmas = corpus.lemma_ids();
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    auto tag = corpus.upos(i);
    if (tag && excluded_pos.count(*tag)) continue;
    ++pairs[{lemmas[i], surfaces[i]}];
  }
  ParadigmTable table;
  const Vocabulary& vocab = corpus.vocabulary();
  for (const auto& [key, count] : pairs) {
    table.add(std::string(vocab.text(key.first)), std::string(vocab.text(key.second)), count);
  }
  if (table.empty()) throw MetricError("no lemma-bearing tokens");
  return table;
}

double shannon_h(std::span<const std::uint64_t> counts) {
  const double total = total_of(counts);
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h == 0.0 ? 0.0 : h;  // normalises -0.0
}

double shannon_h(const Paradigm& paradigm) { return shannon_h(counts_of(paradigm)); }

double simpson_d(std::span<const std::uint64_t> counts, SimpsonVariant variant) {
  const double total = total_of(counts);
  double sum_sq = 0.0;
  for (auto c : counts) {
    double p = static_cast<double>(c) / total;
    sum_sq += p * p;
  }
  return variant == SimpsonVariant::SumOfSquares ? sum_sq : 1.0 / sum_sq;
}

double simpson_d(const Paradigm& paradigm, SimpsonVariant variant) {
  return simpson_d(counts_of(paradigm), variant);
}

MorphAggregate aggregate(const ParadigmTable& table, const AggregateOptions& options) {
  if (table.empty()) throw MetricError("empty paradigm table");
  if (options.min_wordforms < 2) throw ConfigError("min_wordforms must be at least 2");

  MorphAggregate result;
  double sum_h = 0.0;
  double sum_d = 0.0;
  double weight_total = 0.0;
  for (const auto& [lemma, paradigm] : table.paradigms()) {
    if (paradigm.size() == 1) {
      ++result.single_wordform_lemmas;
    } else {
      ++result.multi_wordform_lemmas;
    }
    if (paradigm.size() < options.min_wordforms) continue;
    std::vector<std::uint64_t> counts = counts_of(paradigm);
    double weight = 1.0;
    if (options.weighting == LemmaWeighting::TokenWeighted) weight = total_of(counts);
    sum_h += weight * shannon_h(counts);
    sum_d += weight * simpson_d(counts, options.simpson);
    weight_total += weight;
  }
  if (weight_total == 0.0) {
    throw MetricError("no lemma has at least " + std::to_string(options.min_wordforms) + " wordforms");
  }
  result.mean_h = sum_h / weight_total;
  result.mean_d = sum_d / weight_total;
  return result;
}

void write_paradigms_tsv(const ParadigmTable& table, std::ostream& out) {
  for (const auto& [lemma, paradigm] : table.paradigms()) {
    for (const auto& [form, count] : paradigm) out << lemma << '\t' << form << '\t' << count << '\n';
  }
}

ParadigmTable read_paradigms_tsv(std::istream& in) {
  ParadigmTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::string_view view = line;
    std::size_t t1 = view.find('\t');
    std::size_t t2 = t1 == std::string_view::npos ? t1 : view.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) throw ParseError(line_no, "expected lemma<TAB>wordform<TAB>count");
    std::string_view count_field = view.substr(t2 + 1);
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(count_field.data(), count_field.data() + count_field.size(), count);
    if (ec != std::errc() || ptr != count_field.data() + count_field.size() || count == 0) {
      throw ParseError(line_no, "bad count '" + std::string(count_field) + "'");
    }
    table.add(std::string(view.substr(0, t1)), std::string(view.substr(t1 + 1, t2 - t1 - 1)), count);
  }
  if (table.empty()) throw MetricError("empty paradigm table");
  return table;
}

}  // namespace richness
