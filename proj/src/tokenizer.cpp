#include "qbek/tokenizer.hpp"

#include <algorithm>
#include <string>

#include "qbek/unicode.hpp"

namespace qbek {

void TokenSequence::append(const TokenSequence& other) {
  ids.insert(ids.end(), other.ids.begin(), other.ids.end());
  offsets.insert(offsets.end(), other.offsets.begin(), other.offsets.end());
  word_start.insert(word_start.end(), other.word_start.begin(), other.word_start.end());
}

namespace {

struct Piece {
  Index id;
  std::size_t begin, end;
};

// Greedy longest-match over one word. Returns false when some suffix has
// no matching piece, in which case the whole word must fall back to UNK.
bool match_word(const std::u32string& cps, std::size_t begin, std::size_t end,
                const Vocabulary& vocab, std::vector<Piece>& out) {
  out.clear();
  std::size_t pos = begin;
  bool first = true;
  while (pos < end) {
    std::size_t longest = std::min(end - pos, vocab.max_piece_codepoints());
    bool found = false;
    for (std::size_t len = longest; len >= 1; --len) {
      std::string key;
      if (!first) key = std::string(Vocabulary::kContinuation);
      key += encode_utf8(std::u32string_view(cps).substr(pos, len));
      if (auto id = vocab.find(key)) {
        out.push_back({*id, pos, pos + len});
        pos += len;
        found = true;
        break;
      }
    }
    if (!found) return false;
    first = false;
  }
  return true;
}

}  // namespace

TokenSequence tokenize(std::string_view text, const Vocabulary& vocab) {
  std::u32string cps = decode_utf8(text);
  TokenSequence seq;
  std::vector<Piece> pieces;
  for (const WordRange& w : split_words(cps)) {
    if (match_word(cps, w.begin, w.end, vocab, pieces)) {
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        seq.ids.push_back(pieces[i].id);
        seq.offsets.emplace_back(pieces[i].begin, pieces[i].end);
        seq.word_start.push_back(i == 0);
      }
    } else {
      seq.ids.push_back(vocab.unk_id());
      seq.offsets.emplace_back(w.begin, w.end);
      seq.word_start.push_back(true);
    }
  }
  return seq;
}

}  // namespace qbek
