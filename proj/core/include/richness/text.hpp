#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace richness::text {

/// Throws DecodeError (with absolute offset base + local offset) if `bytes`
/// is not well-formed UTF-8.
void validate_utf8(std::string_view bytes, std::size_t base_offset = 0);

bool is_punctuation(char32_t cp);
bool is_whitespace(char32_t cp);

/// Simple (code point to code point) Unicode case folding.
std::string fold_case(std::string_view utf8);

/// Appends folded `utf8` to `out`; ASCII-only input takes a fast path.
void fold_case_into(std::string_view utf8, std::string& out);

struct TokenizerOptions {
  bool lowercase = true;
};

/// Splits one line on whitespace and detaches every leading and trailing
/// punctuation character (general category P) as its own token. Input must
/// already be valid UTF-8.
class Tokenizer {
 public:
  explicit Tokenizer(TokenizerOptions options = {}) : options_(options) {}

  /// Calls `sink(std::string_view)` for every token of `line`. Views are
  /// valid only during the call.
  template <typename Sink>
  void tokenize(std::string_view line, Sink&& sink);

  std::vector<std::string> tokenize(std::string_view line);

 private:
  // Splits a whitespace-free chunk into [leading punct..., core, trailing
  // punct...] byte ranges.
  void split_chunk(std::string_view chunk, std::vector<std::string_view>& parts) const;

  TokenizerOptions options_;
  std::vector<std::string_view> parts_;
  std::string folded_;
};

// Decodes one code point starting at bytes[i] (input assumed valid) and
// advances i.
char32_t next_code_point(std::string_view bytes, std::size_t& i);

template <typename Sink>
void Tokenizer::tokenize(std::string_view line, Sink&& sink) {
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    std::size_t j = i;
    char32_t cp = next_code_point(line, j);
    if (is_whitespace(cp)) {
      i = j;
      continue;
    }
    std::size_t start = i;
    std::size_t end = j;
    while (end < n) {
      std::size_t k = end;
      char32_t c = next_code_point(line, k);
      if (is_whitespace(c)) break;
      end = k;
    }
    parts_.clear();
    split_chunk(line.substr(start, end - start), parts_);
    for (std::string_view part : parts_) {
      if (options_.lowercase) {
        folded_.clear();
        fold_case_into(part, folded_);
        sink(std::string_view(folded_));
      } else {
        sink(part);
      }
    }
    i = end;
  }
}

}  // namespace richness::text
