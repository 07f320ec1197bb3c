#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <absl/container/flat_hash_set.h>

#include "richness/vocabulary.hpp"

namespace richness {

/// The 17 Universal Dependencies part-of-speech tags.
enum class Upos : std::uint8_t {
  ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM, PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X
};

inline constexpr std::size_t kUposCount = 17;

std::optional<Upos> parse_upos(std::string_view tag);
std::string_view to_string(Upos tag);

enum class AnnotationLevel { SurfaceOnly, Lemmatized };

struct AnnotatedToken {
  std::string surface;
  std::optional<std::string> lemma;
  std::optional<Upos> upos;

  bool operator==(const AnnotatedToken&) const = default;
};

/// Immutable token sequence grouped into sentences. Token strings are interned
/// in a vocabulary shared with every corpus derived from this one.
class AnnotatedCorpus {
 public:
  AnnotatedCorpus() = default;

  std::size_t size() const { return surfaces_.size(); }
  bool empty() const { return surfaces_.empty(); }
  std::size_t sentence_count() const { return sentence_ends_.size(); }

  /// Half-open token index range [first, second) of sentence `s`.
  std::pair<std::size_t, std::size_t> sentence_bounds(std::size_t s) const;

  AnnotatedToken token(std::size_t i) const;
  std::string_view surface(std::size_t i) const { return vocab_->text(surfaces_[i]); }
  std::optional<std::string_view> lemma(std::size_t i) const;
  std::optional<Upos> upos(std::size_t i) const;

  std::span<const TypeId> surface_ids() const { return surfaces_; }
  std::span<const TypeId> lemma_ids() const { return lemmas_; }
  const Vocabulary& vocabulary() const { return *vocab_; }

  AnnotationLevel annotation_level() const { return level_; }
  bool lemmatized() const { return level_ == AnnotationLevel::Lemmatized; }

  const std::string& language() const { return language_; }
  const std::string& label() const { return label_; }
  AnnotatedCorpus with_metadata(std::string language, std::string label) const;

  /// Convenience constructor: each inner vector is one sentence.
  static AnnotatedCorpus from_sentences(const std::vector<std::vector<std::string>>& sentences,
                                        std::string language = "und", std::string label = {});
  static AnnotatedCorpus from_tokens(const std::vector<std::string>& tokens,
                                     std::string language = "und", std::string label = {});
  static AnnotatedCorpus from_annotated(const std::vector<std::vector<AnnotatedToken>>& sentences,
                                        std::string language = "und", std::string label = {});

 private:
  friend class CorpusBuilder;
  friend AnnotatedCorpus exclude_tokens(const AnnotatedCorpus&, const absl::flat_hash_set<std::string>&);
  friend AnnotatedCorpus fold_surfaces(const AnnotatedCorpus&);

  static constexpr std::uint8_t kNoUpos = 0xFF;

  std::shared_ptr<const Vocabulary> vocab_ = std::make_shared<Vocabulary>();
  std::vector<TypeId> surfaces_;
  std::vector<TypeId> lemmas_;       // empty unless lemmatized
  std::vector<std::uint8_t> upos_;   // empty unless lemmatized; kNoUpos when absent
  std::vector<std::size_t> sentence_ends_;
  AnnotationLevel level_ = AnnotationLevel::SurfaceOnly;
  std::string language_ = "und";
  std::string label_;
};

/// Incremental construction of an AnnotatedCorpus.
class CorpusBuilder {
 public:
  explicit CorpusBuilder(AnnotationLevel level, std::string language = "und", std::string label = {});

  void add(std::string_view surface);
  void add(std::string_view surface, std::string_view lemma, std::optional<Upos> upos);
  /// Closes the current sentence; no-op if it is empty.
  void end_sentence();
  void reserve(std::size_t tokens);

  AnnotatedCorpus finish() &&;

 private:
  std::shared_ptr<Vocabulary> vocab_;
  AnnotatedCorpus corpus_;
};

struct NormalizationConfig {
  bool lowercase = true;
  std::string language = "und";
  std::string label;
};

enum class AnnotatedFormat { Conllu, Tsv3 };

/// One sentence per line; see text::Tokenizer. Throws DecodeError or
/// EmptyCorpusError.
AnnotatedCorpus load_plain_text(std::istream& source, const NormalizationConfig& config = {});

/// CoNLL-U or three-column TSV. Surfaces are kept verbatim. Throws ParseError,
/// FormatError, DecodeError or EmptyCorpusError.
AnnotatedCorpus load_annotated(std::istream& source, AnnotatedFormat format,
                               std::string language = "und", std::string label = {});

/// Drops every token whose surface is in `blocklist`. Sentence boundaries are
/// kept, so a sentence may become empty.
AnnotatedCorpus exclude_tokens(const AnnotatedCorpus& corpus,
                               const absl::flat_hash_set<std::string>& blocklist);

/// Case-folds surfaces; lemmas and POS tags are untouched.
AnnotatedCorpus fold_surfaces(const AnnotatedCorpus& corpus);

}  // namespace richness
