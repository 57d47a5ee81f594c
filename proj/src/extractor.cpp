#include "qbek/extractor.hpp"

#include <algorithm>
#include <map>

#include "qbek/encoder.hpp"
#include "qbek/errors.hpp"
#include "qbek/unicode.hpp"

namespace qbek {

MergeMode parse_merge_mode(const std::string& name) {
  if (name == "max") return MergeMode::max;
  if (name == "sum") return MergeMode::sum;
  if (name == "count_weighted") return MergeMode::count_weighted;
  throw ConfigError("unknown merge_mode: " + name);
}

std::string to_string(MergeMode mode) {
  switch (mode) {
    case MergeMode::max: return "max";
    case MergeMode::sum: return "sum";
    case MergeMode::count_weighted: return "count_weighted";
  }
  return "max";
}

std::vector<SpanPrediction> enumerate_spans(const TokenProbabilities& probs,
                                            const Context& context,
                                            std::size_t max_span_tokens) {
  std::vector<SpanPrediction> out;
  const std::size_t begin = context.text_begin();
  const std::size_t end = context.text_end();
  if (begin >= end || max_span_tokens == 0) return out;

  const std::size_t base = context.char_offsets[begin].first;
  for (std::size_t s = begin; s < end; ++s) {
    if (!context.word_start[s]) continue;
    const std::size_t last = std::min(end, s + max_span_tokens);
    for (std::size_t e = s; e < last; ++e) {
      const bool ends_word = e + 1 == end || context.word_start[e + 1];
      if (!ends_word) continue;
      SpanPrediction pred;
      pred.doc_id = context.doc_id;
      pred.start_token = s;
      pred.end_token = e;
      pred.char_start = context.char_offsets[s].first;
      pred.char_end = context.char_offsets[e].second;
      pred.surface = slice_utf8(context.text_source, pred.char_start - base,
                                pred.char_end - base);
      pred.score = probs.v_start[static_cast<Index>(s)] *
                   probs.v_end[static_cast<Index>(e)];
      out.push_back(std::move(pred));
    }
  }
  return out;
}

namespace {

struct MergeBucket {
  std::string surface;
  double best = 0.0;
  std::vector<double> scores;  // only kept for sum mode
};

}  // namespace

std::vector<KeyphraseResult> rank_predictions(const std::vector<SpanPrediction>& predictions,
                                              const Normalizer& normalizer,
                                              const ExtractionConfig& cfg) {
  std::map<std::string, MergeBucket> buckets;
  for (const SpanPrediction& pred : predictions) {
    std::string key = normalize_keyphrase(pred.surface, normalizer);
    if (key.empty()) continue;
    auto [it, inserted] = buckets.try_emplace(std::move(key));
    MergeBucket& bucket = it->second;
    if (inserted || pred.score > bucket.best ||
        (pred.score == bucket.best && pred.surface < bucket.surface)) {
      bucket.best = pred.score;
      bucket.surface = pred.surface;
    }
    bucket.scores.push_back(pred.score);
  }

  std::vector<KeyphraseResult> results;
  results.reserve(buckets.size());
  for (auto& [key, bucket] : buckets) {
    KeyphraseResult result;
    result.normalized_form = key;
    result.surface = bucket.surface;
    result.support_count = bucket.scores.size();
    switch (cfg.merge_mode) {
      case MergeMode::max:
        result.score = bucket.best;
        break;
      case MergeMode::sum: {
        // Summing in sorted order keeps the result independent of the
        // order predictions arrived in.
        std::sort(bucket.scores.begin(), bucket.scores.end());
        double total = 0.0;
        for (double score : bucket.scores) total += score;
        result.score = total;
        break;
      }
      case MergeMode::count_weighted:
        result.score = bucket.best * static_cast<double>(bucket.scores.size());
        break;
    }
    results.push_back(std::move(result));
  }

  std::sort(results.begin(), results.end(),
            [](const KeyphraseResult& a, const KeyphraseResult& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.normalized_form < b.normalized_form;
            });
  if (results.size() > cfg.top_k) results.resize(cfg.top_k);
  return results;
}

std::vector<KeyphraseResult> extract_document(const Document& doc,
                                              const std::vector<Context>& contexts,
                                              const ModelParams& params,
                                              const ExtractionConfig& cfg,
                                              const Normalizer& normalizer) {
  std::vector<SpanPrediction> all;
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const Context& context = contexts[c];
    const EncodedSequence enc = encode(context, params);
    const TokenProbabilities probs = token_probabilities(enc, params, context);
    std::vector<SpanPrediction> spans =
        enumerate_spans(probs, context, cfg.max_span_tokens);
    for (SpanPrediction& pred : spans) {
      pred.doc_id = doc.id;
      pred.context_index = c;
      all.push_back(std::move(pred));
    }
  }
  return rank_predictions(all, normalizer, cfg);
}

}  // namespace qbek
