#pragma once

#include <cstddef>
#include <vector>

#include "qbek/document.hpp"
#include "qbek/normalizer.hpp"

namespace qbek {

/// Largest match window in source words; keyphrases longer than this
/// (after normalization) are never matched.
inline constexpr std::size_t kMaxMatchWindowWords = 16;

/// Finds every occurrence of each gold keyphrase in the document body.
/// An occurrence is a window of consecutive source words whose normalized
/// token sequence equals the keyphrase's, where the first and last window
/// words each contribute at least one token (so spans never dangle on
/// punctuation-only words). Matching is case-insensitive and works at the
/// stem/lemma level. Overlapping occurrences, including occurrences of
/// different keyphrases, are all kept. Keyphrases whose normalized form is
/// empty are skipped with a warning. Spans are sorted by (start, end,
/// keyphrase index).
std::vector<GoldSpan> annotate_gold_spans(
    const Document& doc, const Normalizer& normalizer,
    std::size_t max_window_words = kMaxMatchWindowWords);

struct StatsReport {
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t sentences_without_keyphrase = 0;
  std::size_t gold_keyphrases = 0;
  std::size_t extractive_keyphrases = 0;  // keyphrases with at least one span
  std::size_t gold_spans = 0;

  double fraction_sentences_without_keyphrase() const {
    return sentences ? static_cast<double>(sentences_without_keyphrase) / sentences : 0.0;
  }
  double extractive_ratio() const {
    return gold_keyphrases ? static_cast<double>(extractive_keyphrases) / gold_keyphrases : 0.0;
  }
};

/// Aggregates annotation coverage over a dataset. `spans_per_doc` is
/// parallel to `docs`. A sentence "contains" a span when their codepoint
/// ranges overlap (spans may cross sentence boundaries).
StatsReport dataset_stats(const std::vector<Document>& docs,
                          const std::vector<std::vector<GoldSpan>>& spans_per_doc);

}  // namespace qbek
