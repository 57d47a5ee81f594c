#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qbek/types.hpp"

namespace qbek {

enum class TokenKind { cls, query, sep, text, pad };

enum class ChunkMode { train, infer };

struct ChunkingConfig {
  std::size_t window_sentences = 1;
  bool with_query = true;
  std::size_t max_input_size = 512;
  ChunkMode mode = ChunkMode::infer;
};

/// One model-ready input: [CLS] query [SEP] text [SEP] with the query part
/// optional, plus any trailing [PAD]. Non-text positions carry (0,0) offsets
/// and word_start = false. In train mode g_start/g_end mark tokens that
/// begin/end a gold span lying fully inside the text segment; both are
/// all-zero elsewhere. Spans sharing a boundary token set the bit once.
struct Context {
  std::string doc_id;
  std::size_t first_sentence = 0;  // inclusive sentence indices of the window
  std::size_t last_sentence = 0;
  std::vector<Index> ids;
  std::vector<TokenKind> kinds;
  std::vector<int> segment_ids;  // 0 on the query side of the first SEP, 1 after
  std::vector<std::pair<std::size_t, std::size_t>> char_offsets;  // body codepoints
  std::vector<bool> word_start;
  std::string text_source;  // body slice covered by the text segment
  Vector g_start, g_end;    // empty in infer mode
  bool truncated = false;

  std::size_t size() const { return ids.size(); }

  /// Index of the first text token; size() when there is none.
  std::size_t text_begin() const {
    for (std::size_t i = 0; i < kinds.size(); ++i)
      if (kinds[i] == TokenKind::text) return i;
    return kinds.size();
  }
  /// One past the last text token.
  std::size_t text_end() const {
    for (std::size_t i = kinds.size(); i > 0; --i)
      if (kinds[i - 1] == TokenKind::text) return i;
    return 0;
  }
};

}  // namespace qbek
