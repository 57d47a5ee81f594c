#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qbek/context.hpp"
#include "qbek/document.hpp"
#include "qbek/vocabulary.hpp"

namespace qbek {

/// Inclusive token-index range of one gold span within a window.
struct TokenSpan {
  std::size_t first = 0;
  std::size_t last = 0;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct SplitResult {
  /// Half-open [begin, end) token ranges partitioning the input in order.
  /// When `truncated` is true there is a single piece [0, budget).
  std::vector<std::pair<std::size_t, std::size_t>> pieces;
  bool truncated = false;
};

/// Splits `num_tokens` tokens into the smallest number of pieces that fit
/// `budget`, never cutting inside a span. The piece count is
/// ceil(num_tokens / budget) whenever spans permit it; cut positions are
/// the legal positions nearest to the equal-division targets
/// round(i * num_tokens / pieces), ties to the earlier position, subject to
/// keeping the remainder splittable. When no legal assignment fits any
/// piece count the input is truncated to the first `budget` tokens.
SplitResult split_overlong(std::size_t num_tokens, const std::vector<TokenSpan>& spans,
                           std::size_t budget);

/// Builds contexts for one document: sentences are grouped into consecutive
/// windows of cfg.window_sentences, each window is tokenized, the query is
/// prefixed when configured and present (a missing query logs a warning),
/// and over-long windows go through split_overlong. Gold targets are filled
/// in train mode; spans crossing a window or piece boundary are dropped
/// with a log entry.
std::vector<Context> build_contexts(const Document& doc, const std::vector<Sentence>& sentences,
                                    const std::vector<GoldSpan>& gold_spans,
                                    const ChunkingConfig& cfg, const Vocabulary& vocab);

/// Fraction of sentence windows whose assembled input (query + specials +
/// text) exceeds cfg.max_input_size before any splitting.
double saturation_fraction(const std::vector<Document>& docs, const ChunkingConfig& cfg,
                           const Vocabulary& vocab);

/// Fraction of contexts whose text-segment source contains at least one of
/// the given headline strings as a case-sensitive substring.
double headline_fraction(const std::vector<Context>& contexts,
                         const std::vector<std::string>& headlines);

}  // namespace qbek
