#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qbek/context.hpp"
#include "qbek/document.hpp"
#include "qbek/model_params.hpp"
#include "qbek/normalizer.hpp"
#include "qbek/span_head.hpp"

namespace qbek {

/// How duplicate normalized forms from different predictions combine into
/// one score: best single occurrence (default), sum over occurrences, or
/// best occurrence scaled by the number of occurrences.
enum class MergeMode { max, sum, count_weighted };

MergeMode parse_merge_mode(const std::string& name);
std::string to_string(MergeMode mode);

struct ExtractionConfig {
  std::size_t max_span_tokens = 6;
  std::size_t top_k = 10;
  MergeMode merge_mode = MergeMode::max;
};

/// One scored candidate span inside a single context.
struct SpanPrediction {
  std::string doc_id;
  std::size_t context_index = 0;
  std::size_t start_token = 0;  // inclusive token positions in the context
  std::size_t end_token = 0;
  std::size_t char_start = 0;  // codepoint offsets into the document body
  std::size_t char_end = 0;
  std::string surface;
  double score = 0.0;
};

/// One keyphrase after merging predictions that share a normalized form.
struct KeyphraseResult {
  std::string normalized_form;
  std::string surface;  // from the best-scoring merged prediction
  double score = 0.0;
  std::size_t support_count = 0;
};

/// Every candidate span of one context: start and end inside the text
/// segment, length at most max_span_tokens, scored v_start[s] * v_end[e].
/// The start token must begin a word and the end token must end one, where
/// "ends a word" means the following text token (if any) starts a new word.
/// A context whose text was cut mid-word can therefore contribute the
/// leading fragment of the word as its final token's surface.
std::vector<SpanPrediction> enumerate_spans(const TokenProbabilities& probs,
                                            const Context& context,
                                            std::size_t max_span_tokens = 6);

/// Merges by normalized form and ranks: score descending, ties by
/// normalized form ascending. Predictions normalizing to the empty string
/// (pure punctuation) are dropped. The result is independent of the input
/// order. Returns at most cfg.top_k entries.
std::vector<KeyphraseResult> rank_predictions(const std::vector<SpanPrediction>& predictions,
                                              const Normalizer& normalizer,
                                              const ExtractionConfig& cfg);

/// Runs the model over every context of one document, enumerates and scores
/// candidate spans, and returns the merged top-k keyphrases.
std::vector<KeyphraseResult> extract_document(const Document& doc,
                                              const std::vector<Context>& contexts,
                                              const ModelParams& params,
                                              const ExtractionConfig& cfg,
                                              const Normalizer& normalizer);

}  // namespace qbek
