#include "qbek/unicode.hpp"

namespace qbek {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Returns the number of bytes consumed (>= 1) and writes the codepoint.
std::size_t decode_one(std::string_view text, std::size_t pos, char32_t& out) {
  const auto byte = [&](std::size_t i) -> unsigned {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned b0 = byte(pos);
  if (b0 < 0x80) {
    out = b0;
    return 1;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    out = kReplacement;
    return 1;
  }
  if (pos + len > text.size()) {
    out = kReplacement;
    return 1;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      out = kReplacement;
      return 1;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong encodings and surrogates.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
      cp > 0x10FFFF) {
    out = kReplacement;
    return 1;
  }
  out = cp;
  return len;
}

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string result;
  result.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = 0;
    pos += decode_one(text, pos, cp);
    result.push_back(cp);
  }
  return result;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode_utf8(std::u32string_view codepoints) {
  std::string out;
  out.reserve(codepoints.size());
  for (char32_t cp : codepoints) out += encode_utf8(cp);
  return out;
}

std::string slice_utf8(std::string_view text, std::size_t begin, std::size_t end) {
  std::string out;
  std::size_t pos = 0;
  std::size_t index = 0;
  while (pos < text.size() && index < end) {
    char32_t cp = 0;
    const std::size_t len = decode_one(text, pos, cp);
    if (index >= begin) out += encode_utf8(cp);
    pos += len;
    ++index;
  }
  return out;
}

std::size_t codepoint_count(std::string_view text) {
  std::size_t pos = 0;
  std::size_t count = 0;
  while (pos < text.size()) {
    char32_t cp = 0;
    pos += decode_one(text, pos, cp);
    ++count;
  }
  return count;
}

bool is_space(char32_t c) {
  switch (c) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\f':
    case U'\v':
    case 0x00A0:  // no-break space
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_upper(char32_t c) {
  if (c >= U'A' && c <= U'Z') return true;
  return c >= 0xC0 && c <= 0xDE && c != 0xD7;  // Latin-1 uppercase block
}

char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  return c;
}

std::string lowercase(std::string_view text) {
  std::u32string cps = decode_utf8(text);
  for (char32_t& c : cps) c = to_lower(c);
  return encode_utf8(cps);
}

std::vector<WordRange> split_words(std::u32string_view codepoints) {
  std::vector<WordRange> words;
  std::size_t i = 0;
  while (i < codepoints.size()) {
    while (i < codepoints.size() && is_space(codepoints[i])) ++i;
    if (i >= codepoints.size()) break;
    const std::size_t begin = i;
    while (i < codepoints.size() && !is_space(codepoints[i])) ++i;
    words.push_back({begin, i});
  }
  return words;
}

}  // namespace qbek
