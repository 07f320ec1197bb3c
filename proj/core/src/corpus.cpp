#include "richness/corpus.hpp"

#include <array>
#include <charconv>

#include "richness/error.hpp"
#include "richness/text.hpp"

namespace richness {
namespace {

constexpr std::array<std::string_view, kUposCount> kUposNames = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

bool is_plain_id(std::string_view id) {
  if (id.empty()) return false;
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), value);
  return ec == std::errc() && ptr == id.data() + id.size();
}

}  // namespace

std::optional<Upos> parse_upos(std::string_view tag) {
  for (std::size_t i = 0; i < kUposNames.size(); ++i) {
    if (kUposNames[i] == tag) return static_cast<Upos>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Upos tag) { return kUposNames[static_cast<std::size_t>(tag)]; }

// ---------------------------------------------------------------------------
// AnnotatedCorpus

std::pair<std::size_t, std::size_t> AnnotatedCorpus::sentence_bounds(std::size_t s) const {
  return {s == 0 ? 0 : sentence_ends_[s - 1], sentence_ends_[s]};
}

std::optional<std::string_view> AnnotatedCorpus::lemma(std::size_t i) const {
  if (lemmas_.empty()) return std::nullopt;
  return vocab_->text(lemmas_[i]);
}

std::optional<Upos> AnnotatedCorpus::upos(std::size_t i) const {
  if (upos_.empty() || upos_[i] == kNoUpos) return std::nullopt;
  return static_cast<Upos>(upos_[i]);
}

AnnotatedToken AnnotatedCorpus::token(std::size_t i) const {
  AnnotatedToken tok{std::string(surface(i)), std::nullopt, upos(i)};
  if (auto l = lemma(i)) tok.lemma = std::string(*l);
  return tok;
}

AnnotatedCorpus AnnotatedCorpus::with_metadata(std::string language, std::string label) const {
  AnnotatedCorpus copy = *this;
  copy.language_ = std::move(language);
  copy.label_ = std::move(label);
  return copy;
}

AnnotatedCorpus AnnotatedCorpus::from_sentences(const std::vector<std::vector<std::string>>& sentences,
                                                std::string language, std::string label) {
  CorpusBuilder builder(AnnotationLevel::SurfaceOnly, std::move(language), std::move(label));
  for (const auto& sentence : sentences) {
    for (const auto& tok : sentence) builder.add(tok);
    builder.end_sentence();
  }
  return std::move(builder).finish();
}

AnnotatedCorpus AnnotatedCorpus::from_tokens(const std::vector<std::string>& tokens, std::string language,
                                             std::string label) {
  return from_sentences({tokens}, std::move(language), std::move(label));
}

AnnotatedCorpus AnnotatedCorpus::from_annotated(const std::vector<std::vector<AnnotatedToken>>& sentences,
                                                std::string language, std::string label) {
  CorpusBuilder builder(AnnotationLevel::Lemmatized, std::move(language), std::move(label));
  for (const auto& sentence : sentences) {
    for (const auto& tok : sentence) {
      if (!tok.lemma) throw AnnotationLevelError("token '" + tok.surface + "' has no lemma");
      builder.add(tok.surface, *tok.lemma, tok.upos);
    }
    builder.end_sentence();
  }
  return std::move(builder).finish();
}

// ---------------------------------------------------------------------------
// CorpusBuilder

CorpusBuilder::CorpusBuilder(AnnotationLevel level, std::string language, std::string label)
    : vocab_(std::make_shared<Vocabulary>()) {
  corpus_.vocab_ = vocab_;
  corpus_.level_ = level;
  corpus_.language_ = std::move(language);
  corpus_.label_ = std::move(label);
}

void CorpusBuilder::add(std::string_view surface) {
  if (corpus_.level_ == AnnotationLevel::Lemmatized) {
    throw AnnotationLevelError("lemmatized corpus requires a lemma for every token");
  }
  corpus_.surfaces_.push_back(vocab_->intern(surface));
}

void CorpusBuilder::add(std::string_view surface, std::string_view lemma, std::optional<Upos> upos) {
  if (corpus_.level_ != AnnotationLevel::Lemmatized) {
    throw AnnotationLevelError("surface-only corpus cannot carry lemmas");
  }
  corpus_.surfaces_.push_back(vocab_->intern(surface));
  corpus_.lemmas_.push_back(vocab_->intern(lemma));
  corpus_.upos_.push_back(upos ? static_cast<std::uint8_t>(*upos) : AnnotatedCorpus::kNoUpos);
}

void CorpusBuilder::end_sentence() {
  std::size_t last = corpus_.sentence_ends_.empty() ? 0 : corpus_.sentence_ends_.back();
  if (corpus_.surfaces_.size() > last) corpus_.sentence_ends_.push_back(corpus_.surfaces_.size());
}

void CorpusBuilder::reserve(std::size_t tokens) {
  corpus_.surfaces_.reserve(tokens);
  if (corpus_.level_ == AnnotationLevel::Lemmatized) {
    corpus_.lemmas_.reserve(tokens);
    corpus_.upos_.reserve(tokens);
  }
}

AnnotatedCorpus CorpusBuilder::finish() && {
  end_sentence();
  return std::move(corpus_);
}

// ---------------------------------------------------------------------------
// Loaders

AnnotatedCorpus load_plain_text(std::istream& source, const NormalizationConfig& config) {
  CorpusBuilder builder(AnnotationLevel::SurfaceOnly, config.language, config.label);
  text::Tokenizer tokenizer({.lowercase = config.lowercase});
  std::string line;
  std::size_t offset = 0;
  while (std::getline(source, line)) {
    text::validate_utf8(line, offset);
    offset += line.size() + 1;
    strip_cr(line);
    tokenizer.tokenize(line, [&](std::string_view tok) { builder.add(tok); });
    builder.end_sentence();
  }
  AnnotatedCorpus corpus = std::move(builder).finish();
  if (corpus.empty()) throw EmptyCorpusError();
  return corpus;
}

AnnotatedCorpus load_annotated(std::istream& source, AnnotatedFormat format, std::string language,
                               std::string label) {
  CorpusBuilder builder(AnnotationLevel::Lemmatized, std::move(language), std::move(label));
  std::string line;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (std::getline(source, line)) {
    ++line_no;
    text::validate_utf8(line, offset);
    offset += line.size() + 1;
    strip_cr(line);
    if (is_blank(line)) {
      builder.end_sentence();
      continue;
    }
    std::vector<std::string_view> fields = split_tabs(line);
    std::string_view form, lemma, upos_tag;
    if (format == AnnotatedFormat::Conllu) {
      if (line.front() == '#') continue;
      if (fields.size() != 10) {
        throw ParseError(line_no, "expected 10 tab-separated columns, found " + std::to_string(fields.size()));
      }
      std::string_view id = fields[0];
      if (!is_plain_id(id)) {
        // Multiword-token ranges (1-2) and empty nodes (1.1) carry no usable lemma.
        if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) continue;
        throw ParseError(line_no, "bad token id '" + std::string(id) + "'");
      }
      form = fields[1];
      lemma = fields[2];
      upos_tag = fields[3];
      if (lemma == "_" && form != "_") throw FormatError(line_no, "missing lemma");
    } else {
      if (fields.size() != 3) {
        throw ParseError(line_no, "expected 3 tab-separated columns, found " + std::to_string(fields.size()));
      }
      form = fields[0];
      lemma = fields[1];
      upos_tag = fields[2];
    }
    if (form.empty()) throw ParseError(line_no, "empty surface form");
    if (lemma.empty()) throw FormatError(line_no, "missing lemma");
    std::optional<Upos> upos = parse_upos(upos_tag);
    if (!upos) throw ParseError(line_no, "unknown UPOS tag '" + std::string(upos_tag) + "'");
    builder.add(form, lemma, upos);
  }
  AnnotatedCorpus corpus = std::move(builder).finish();
  if (corpus.empty()) throw EmptyCorpusError();
  return corpus;
}

AnnotatedCorpus exclude_tokens(const AnnotatedCorpus& corpus, const absl::flat_hash_set<std::string>& blocklist) {
  if (blocklist.empty()) return corpus;
  const Vocabulary& vocab = *corpus.vocab_;
  std::vector<bool> blocked(vocab.size(), false);
  for (const auto& word : blocklist) {
    if (auto id = vocab.find(word)) blocked[*id] = true;
  }

  AnnotatedCorpus out;
  out.vocab_ = corpus.vocab_;
  out.level_ = corpus.level_;
  out.language_ = corpus.language_;
  out.label_ = corpus.label_;
  const bool annotated = corpus.lemmatized();
  std::size_t begin = 0;
  for (std::size_t end : corpus.sentence_ends_) {
    for (std::size_t i = begin; i < end; ++i) {
      if (blocked[corpus.surfaces_[i]]) continue;
      out.surfaces_.push_back(corpus.surfaces_[i]);
      if (annotated) {
        out.lemmas_.push_back(corpus.lemmas_[i]);
        out.upos_.push_back(corpus.upos_[i]);
      }
    }
    out.sentence_ends_.push_back(out.surfaces_.size());
    begin = end;
  }
  return out;
}

AnnotatedCorpus fold_surfaces(const AnnotatedCorpus& corpus) {
  auto vocab = std::make_shared<Vocabulary>(*corpus.vocab_);
  const std::size_t original = vocab->size();
  std::vector<TypeId> remap(original);
  std::string folded;
  for (TypeId id = 0; id < original; ++id) {
    folded.clear();
    text::fold_case_into(vocab->text(id), folded);
    remap[id] = vocab->intern(folded);
  }
  AnnotatedCorpus out = corpus;
  out.vocab_ = std::move(vocab);
  for (TypeId& id : out.surfaces_) id = remap[id];
  return out;
}

}  // namespace richness
