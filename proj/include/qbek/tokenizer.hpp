#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "qbek/types.hpp"
#include "qbek/vocabulary.hpp"

namespace qbek {

/// Subword ids plus enough bookkeeping to map every token back to the
/// exact source slice it came from. Offsets count Unicode scalar values.
struct TokenSequence {
  std::vector<Index> ids;
  std::vector<std::pair<std::size_t, std::size_t>> offsets;  // [start, end)
  std::vector<bool> word_start;

  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
  void append(const TokenSequence& other);
};

/// Greedy longest-match subword split of whitespace-delimited words.
/// Case is preserved; a word with no full decomposition becomes a single
/// UNK token spanning the word. Total: never throws on any input text.
TokenSequence tokenize(std::string_view text, const Vocabulary& vocab);

}  // namespace qbek
