#include "qbek/chunker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "qbek/errors.hpp"
#include "qbek/log.hpp"
#include "qbek/sentence_split.hpp"
#include "qbek/tokenizer.hpp"
#include "qbek/unicode.hpp"

namespace qbek {
namespace {

constexpr std::size_t kInfeasible = std::numeric_limits<std::size_t>::max();

// Cut position c (0 < c < num_tokens) is legal unless it falls strictly
// inside a span: first < c <= last.
std::vector<std::size_t> legal_cut_positions(std::size_t num_tokens,
                                             const std::vector<TokenSpan>& spans) {
  std::vector<bool> blocked(num_tokens + 1, false);
  for (const TokenSpan& s : spans)
    for (std::size_t c = s.first + 1; c <= s.last; ++c) blocked[c] = true;
  std::vector<std::size_t> cuts;
  for (std::size_t c = 1; c < num_tokens; ++c)
    if (!blocked[c]) cuts.push_back(c);
  return cuts;
}

// min_pieces[pos]: fewest pieces covering [pos, num_tokens) with every piece
// at most `budget` long and every cut legal. A later legal start never needs
// more pieces than an earlier one (its piece in the earlier solution still
// fits), so min_pieces is non-increasing over cuts and the furthest jump in
// range is always an optimal first cut.
std::vector<std::size_t> suffix_min_pieces(std::size_t num_tokens,
                                           const std::vector<std::size_t>& cuts,
                                           std::size_t budget) {
  std::vector<std::size_t> m(num_tokens + 1, kInfeasible);
  m[num_tokens] = 0;
  for (std::size_t pos = num_tokens; pos-- > 0;) {
    if (num_tokens - pos <= budget) {
      m[pos] = 1;
      continue;
    }
    auto it = std::upper_bound(cuts.begin(), cuts.end(), pos + budget);
    if (it == cuts.begin()) continue;
    std::size_t c = *(it - 1);
    if (c > pos && m[c] != kInfeasible) m[pos] = m[c] + 1;
  }
  return m;
}

}  // namespace

SplitResult split_overlong(std::size_t num_tokens, const std::vector<TokenSpan>& spans,
                           std::size_t budget) {
  if (budget == 0) throw ConfigError("split budget must be positive");
  for (const TokenSpan& s : spans)
    if (s.first > s.last || s.last >= num_tokens)
      throw InvalidSpan("token span [" + std::to_string(s.first) + ", " +
                        std::to_string(s.last) + "] outside 0.." +
                        std::to_string(num_tokens - 1));
  SplitResult result;
  if (num_tokens <= budget) {
    result.pieces.emplace_back(0, num_tokens);
    return result;
  }
  std::vector<std::size_t> cuts = legal_cut_positions(num_tokens, spans);
  std::vector<std::size_t> m = suffix_min_pieces(num_tokens, cuts, budget);
  if (m[0] == kInfeasible) {
    result.pieces.emplace_back(0, budget);
    result.truncated = true;
    return result;
  }
  // m[0] equals ceil(num_tokens / budget) whenever that count is legally
  // achievable, and is otherwise the smallest feasible count.
  std::size_t p = m[0];
  std::size_t prev = 0;
  for (std::size_t i = 1; i < p; ++i) {
    std::size_t remaining = p - i;  // pieces still owed after this cut
    auto target = static_cast<std::size_t>(
        std::llround(static_cast<double>(i) * static_cast<double>(num_tokens) /
                     static_cast<double>(p)));
    std::size_t best = 0;
    long long best_dist = -1;
    auto lo = std::upper_bound(cuts.begin(), cuts.end(), prev);
    auto hi = std::upper_bound(cuts.begin(), cuts.end(), prev + budget);
    for (auto it = lo; it != hi; ++it) {
      std::size_t c = *it;
      // The suffix must split into exactly `remaining` pieces: at least
      // m[c], and at most one more than the legal cuts after c (an unused
      // legal cut can always subdivide some piece further).
      if (m[c] > remaining) continue;
      auto cuts_after = static_cast<std::size_t>(cuts.end() - (it + 1));
      if (remaining > cuts_after + 1) continue;
      long long dist = std::llabs(static_cast<long long>(c) - static_cast<long long>(target));
      if (best_dist < 0 || dist < best_dist) {  // ties keep the earlier cut
        best_dist = dist;
        best = c;
      }
    }
    if (best_dist < 0) throw Error("split_overlong: no feasible cut despite feasible count");
    result.pieces.emplace_back(prev, best);
    prev = best;
  }
  result.pieces.emplace_back(prev, num_tokens);
  return result;
}

namespace {

struct DocTokens {
  TokenSequence tokens;                     // whole body, offsets in body codepoints
  std::vector<std::size_t> sentence_begin;  // token index where each sentence starts
};

DocTokens tokenize_sentences(const Document& doc, const std::vector<Sentence>& sentences,
                             const Vocabulary& vocab) {
  DocTokens out;
  for (const Sentence& s : sentences) {
    out.sentence_begin.push_back(out.tokens.size());
    TokenSequence seq = tokenize(slice_utf8(doc.body, s.char_start, s.char_end), vocab);
    for (auto& [b, e] : seq.offsets) {
      b += s.char_start;
      e += s.char_start;
    }
    out.tokens.append(seq);
  }
  out.sentence_begin.push_back(out.tokens.size());
  return out;
}

// Maps char spans onto inclusive token ranges; spans that do not line up
// with word boundaries are dropped with a warning.
std::vector<TokenSpan> align_spans(const Document& doc, const TokenSequence& tokens,
                                   const std::vector<GoldSpan>& gold_spans) {
  std::vector<TokenSpan> out;
  for (const GoldSpan& g : gold_spans) {
    std::size_t t_start = tokens.size(), t_end = tokens.size();
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (tokens.word_start[t] && tokens.offsets[t].first == g.char_start) t_start = t;
      if (tokens.offsets[t].second == g.char_end) t_end = t;
    }
    if (t_start == tokens.size() || t_end == tokens.size() || t_end < t_start) {
      log::warn("document " + doc.id + ": gold span [" + std::to_string(g.char_start) + ", " +
                std::to_string(g.char_end) + ") does not align with word boundaries; dropped");
      continue;
    }
    out.push_back({t_start, t_end});
  }
  return out;
}

// Builds one context over doc tokens [abs_begin, abs_end). `piece_spans`
// are inclusive token ranges rebased to this piece.
Context assemble_context(const Document& doc, const DocTokens& dt, std::size_t abs_begin,
                         std::size_t abs_end, std::size_t first_sentence,
                         std::size_t last_sentence, const TokenSequence* query,
                         const std::vector<TokenSpan>& piece_spans, const ChunkingConfig& cfg,
                         const Vocabulary& vocab, bool truncated) {
  Context ctx;
  ctx.doc_id = doc.id;
  ctx.first_sentence = first_sentence;
  ctx.last_sentence = last_sentence;
  ctx.truncated = truncated;

  auto push = [&ctx](Index id, TokenKind kind, int segment,
                     std::pair<std::size_t, std::size_t> offsets, bool word_start) {
    ctx.ids.push_back(id);
    ctx.kinds.push_back(kind);
    ctx.segment_ids.push_back(segment);
    ctx.char_offsets.push_back(offsets);
    ctx.word_start.push_back(word_start);
  };

  int text_segment = query ? 1 : 0;
  push(vocab.cls_id(), TokenKind::cls, 0, {0, 0}, false);
  if (query) {
    for (std::size_t i = 0; i < query->size(); ++i)
      push(query->ids[i], TokenKind::query, 0, {0, 0}, false);
    push(vocab.sep_id(), TokenKind::sep, 0, {0, 0}, false);
  }
  std::size_t text_pos0 = ctx.ids.size();
  for (std::size_t t = abs_begin; t < abs_end; ++t)
    push(dt.tokens.ids[t], TokenKind::text, text_segment, dt.tokens.offsets[t],
         dt.tokens.word_start[t]);
  push(vocab.sep_id(), TokenKind::sep, text_segment, {0, 0}, false);

  ctx.text_source = slice_utf8(doc.body, dt.tokens.offsets[abs_begin].first,
                               dt.tokens.offsets[abs_end - 1].second);

  if (cfg.mode == ChunkMode::train) {
    ctx.g_start = Vector::Zero(static_cast<Index>(ctx.size()));
    ctx.g_end = Vector::Zero(static_cast<Index>(ctx.size()));
    for (const TokenSpan& s : piece_spans) {
      ctx.g_start[static_cast<Index>(text_pos0 + s.first)] = 1.0;
      ctx.g_end[static_cast<Index>(text_pos0 + s.last)] = 1.0;
    }
  }
  return ctx;
}

}  // namespace

std::vector<Context> build_contexts(const Document& doc, const std::vector<Sentence>& sentences,
                                    const std::vector<GoldSpan>& gold_spans,
                                    const ChunkingConfig& cfg, const Vocabulary& vocab) {
  if (cfg.window_sentences == 0) throw ConfigError("window_sentences must be positive");
  if (cfg.max_input_size < 3)
    throw ConfigError("max_input_size must allow CLS + SEP + at least one text token");
  std::vector<Context> contexts;
  if (sentences.empty()) return contexts;

  DocTokens dt = tokenize_sentences(doc, sentences, vocab);
  bool use_query = cfg.with_query;
  TokenSequence query_tokens;
  if (use_query) {
    if (!doc.query) {
      log::warn("document " + doc.id + ": no title to use as query; contexts built without one");
      use_query = false;
    } else {
      query_tokens = tokenize(*doc.query, vocab);
      if (query_tokens.size() + 3 + 1 > cfg.max_input_size) {
        log::warn("document " + doc.id + ": query of " + std::to_string(query_tokens.size()) +
                  " tokens leaves no room for text; contexts built without one");
        use_query = false;
      }
    }
  }
  std::size_t overhead = use_query ? query_tokens.size() + 3 : 2;
  std::size_t budget = cfg.max_input_size - overhead;

  std::vector<TokenSpan> spans = cfg.mode == ChunkMode::train
                                     ? align_spans(doc, dt.tokens, gold_spans)
                                     : std::vector<TokenSpan>{};

  for (std::size_t w0 = 0; w0 < sentences.size(); w0 += cfg.window_sentences) {
    std::size_t w1 = std::min(sentences.size(), w0 + cfg.window_sentences);
    std::size_t tok_begin = dt.sentence_begin[w0];
    std::size_t tok_end = dt.sentence_begin[w1];
    if (tok_begin == tok_end) continue;

    // Spans fully inside the window, rebased to window coordinates. A span
    // straddling the window edge cannot be represented and is dropped.
    std::vector<TokenSpan> window_spans;
    for (const TokenSpan& s : spans) {
      if (s.first >= tok_end || s.last < tok_begin) continue;
      if (s.first < tok_begin || s.last >= tok_end) {
        if (s.first >= tok_begin)  // warn once, in the window that starts the span
          log::warn("document " + doc.id +
                    ": gold span crosses a sentence-window boundary; dropped from targets");
        continue;
      }
      window_spans.push_back({s.first - tok_begin, s.last - tok_begin});
    }

    SplitResult split = split_overlong(tok_end - tok_begin, window_spans, budget);
    if (split.truncated) {
      log::warn("document " + doc.id + ": window of " + std::to_string(tok_end - tok_begin) +
                " tokens has no legal split; truncated to " + std::to_string(budget));
      for (const TokenSpan& s : window_spans)
        if (s.last >= budget)
          log::warn("document " + doc.id + ": gold span lost to truncation");
    }
    for (const auto& [piece_begin, piece_end] : split.pieces) {
      std::vector<TokenSpan> piece_spans;
      for (const TokenSpan& s : window_spans)
        if (s.first >= piece_begin && s.last < piece_end)
          piece_spans.push_back({s.first - piece_begin, s.last - piece_begin});
      contexts.push_back(assemble_context(doc, dt, tok_begin + piece_begin,
                                          tok_begin + piece_end, w0, w1 - 1,
                                          use_query ? &query_tokens : nullptr, piece_spans, cfg,
                                          vocab, split.truncated));
    }
  }
  return contexts;
}

double saturation_fraction(const std::vector<Document>& docs, const ChunkingConfig& cfg,
                           const Vocabulary& vocab) {
  if (cfg.window_sentences == 0) throw ConfigError("window_sentences must be positive");
  std::size_t windows = 0, saturated = 0;
  for (const Document& doc : docs) {
    std::vector<Sentence> sentences = split_sentences(doc.body);
    if (sentences.empty()) continue;
    DocTokens dt = tokenize_sentences(doc, sentences, vocab);
    std::size_t overhead = 2;
    if (cfg.with_query && doc.query) overhead = tokenize(*doc.query, vocab).size() + 3;
    for (std::size_t w0 = 0; w0 < sentences.size(); w0 += cfg.window_sentences) {
      std::size_t w1 = std::min(sentences.size(), w0 + cfg.window_sentences);
      std::size_t len = dt.sentence_begin[w1] - dt.sentence_begin[w0];
      if (len == 0) continue;
      ++windows;
      if (len + overhead > cfg.max_input_size) ++saturated;
    }
  }
  return windows ? static_cast<double>(saturated) / static_cast<double>(windows) : 0.0;
}

double headline_fraction(const std::vector<Context>& contexts,
                         const std::vector<std::string>& headlines) {
  if (contexts.empty()) return 0.0;
  std::size_t hits = 0;
  for (const Context& ctx : contexts) {
    for (const std::string& h : headlines) {
      if (h.empty()) continue;
      if (ctx.text_source.find(h) != std::string::npos) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(contexts.size());
}

}  // namespace qbek
