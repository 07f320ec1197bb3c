#include "richness/text.hpp"

#include <algorithm>
#include <array>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "richness/error.hpp"

namespace richness::text {
namespace {

struct AsciiTables {
  std::array<bool, 128> punct{};
  std::array<bool, 128> space{};
  AsciiTables() {
    for (UChar32 c = 0; c < 128; ++c) {
      punct[c] = u_ispunct(c);
      space[c] = u_isUWhiteSpace(c);
    }
  }
};

const AsciiTables& ascii() {
  static const AsciiTables tables;
  return tables;
}

}  // namespace

void validate_utf8(std::string_view bytes, std::size_t base_offset) {
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  // Validated in 1 GiB windows so ICU's int32_t indices never overflow; a
  // sequence straddling a window edge is retried from its first byte.
  constexpr std::size_t kWindow = std::size_t{1} << 30;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto length = static_cast<int32_t>(std::min(kWindow, bytes.size() - pos));
    const bool last = pos + static_cast<std::size_t>(length) == bytes.size();
    int32_t i = 0;
    while (i < length) {
      const int32_t start = i;
      UChar32 c = 0;
      U8_NEXT(s + pos, i, length, c);
      if (c < 0) {
        if (!last && length - start < 4) {
          i = start;
          break;
        }
        throw DecodeError(base_offset + pos + static_cast<std::size_t>(start));
      }
    }
    pos += static_cast<std::size_t>(i);
  }
}

char32_t next_code_point(std::string_view bytes, std::size_t& i) {
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data()) + i;
  int32_t k = 0;
  UChar32 c = 0;
  U8_NEXT_UNSAFE(s, k, c);
  i += static_cast<std::size_t>(k);
  return static_cast<char32_t>(c);
}

bool is_punctuation(char32_t cp) {
  if (cp < 128) return ascii().punct[cp];
  return u_ispunct(static_cast<UChar32>(cp));
}

bool is_whitespace(char32_t cp) {
  if (cp < 128) return ascii().space[cp];
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

void fold_case_into(std::string_view utf8, std::string& out) {
  out.reserve(out.size() + utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    auto b = static_cast<unsigned char>(utf8[i]);
    if (b < 0x80) {
      out.push_back(b >= 'A' && b <= 'Z' ? static_cast<char>(b + ('a' - 'A')) : static_cast<char>(b));
      ++i;
      continue;
    }
    char32_t cp = next_code_point(utf8, i);
    UChar32 folded = u_foldCase(static_cast<UChar32>(cp), U_FOLD_CASE_DEFAULT);
    char buf[4];
    int32_t len = 0;
    U8_APPEND_UNSAFE(buf, len, folded);
    out.append(buf, static_cast<std::size_t>(len));
  }
}

std::string fold_case(std::string_view utf8) {
  std::string out;
  fold_case_into(utf8, out);
  return out;
}

void Tokenizer::split_chunk(std::string_view chunk, std::vector<std::string_view>& parts) const {
  // Leading punctuation, one token per character.
  std::size_t begin = 0;
  while (begin < chunk.size()) {
    std::size_t j = begin;
    if (!is_punctuation(next_code_point(chunk, j))) break;
    parts.push_back(chunk.substr(begin, j - begin));
    begin = j;
  }
  if (begin == chunk.size()) return;

  // Trailing punctuation, collected from the end backwards.
  std::vector<std::string_view> trailing;
  std::size_t end = chunk.size();
  while (end > begin) {
    std::size_t start = end - 1;
    while (start > begin && (static_cast<unsigned char>(chunk[start]) & 0xC0) == 0x80) --start;
    std::size_t j = start;
    if (!is_punctuation(next_code_point(chunk, j))) break;
    trailing.push_back(chunk.substr(start, end - start));
    end = start;
  }
  parts.push_back(chunk.substr(begin, end - begin));
  parts.insert(parts.end(), trailing.rbegin(), trailing.rend());
}

std::vector<std::string> Tokenizer::tokenize(std::string_view line) {
  std::vector<std::string> out;
  tokenize(line, [&](std::string_view tok) { out.emplace_back(tok); });
  return out;
}

}  // namespace richness::text
