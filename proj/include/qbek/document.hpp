#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qbek {

/// One annotated occurrence of a gold keyphrase in the document body.
/// Offsets are codepoint positions delimiting whole source words, so
/// normalize_keyphrase(body[char_start..char_end]) equals the normalized
/// gold keyphrase.
struct GoldSpan {
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::size_t keyphrase_index = 0;

  friend bool operator==(const GoldSpan&, const GoldSpan&) = default;
};

/// Half-open codepoint range of one sentence in the body. Ranges are
/// disjoint, ordered, and cover every non-whitespace character.
struct Sentence {
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Document {
  std::string id;
  std::optional<std::string> query;  // document title, when present
  std::string body;
  std::vector<std::string> gold_keyphrases;
  std::string language = "en";
  std::optional<std::vector<GoldSpan>> gold_spans;  // present once annotated
};

}  // namespace qbek
