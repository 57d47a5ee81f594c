#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qbek {

// All character offsets in this toolkit count Unicode scalar values, not
// bytes, so annotation files stay portable across implementations.

/// Decodes UTF-8 into codepoints. Invalid byte sequences become U+FFFD,
/// one replacement per offending byte, so decoding is total.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view codepoints);
std::string encode_utf8(char32_t codepoint);

/// UTF-8 slice of `text` between codepoint offsets [begin, end).
std::string slice_utf8(std::string_view text, std::size_t begin, std::size_t end);

std::size_t codepoint_count(std::string_view text);

bool is_space(char32_t c);
bool is_digit(char32_t c);
bool is_upper(char32_t c);

/// ASCII plus Latin-1 lowercasing; other codepoints pass through.
char32_t to_lower(char32_t c);
std::string lowercase(std::string_view text);

/// A whitespace-delimited word as codepoint offsets into the source.
struct WordRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::vector<WordRange> split_words(std::u32string_view codepoints);

}  // namespace qbek
