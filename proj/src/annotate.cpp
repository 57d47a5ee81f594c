#include "qbek/annotate.hpp"

#include <algorithm>
#include <string>

#include "qbek/errors.hpp"
#include "qbek/log.hpp"
#include "qbek/sentence_split.hpp"
#include "qbek/unicode.hpp"

namespace qbek {
namespace {

// Normalizes word tokens and keyphrase tokens through one batch call so
// external normalizers are invoked once per document.
struct NormalizedDocument {
  std::vector<WordRange> words;
  std::vector<std::vector<std::string>> word_tokens;  // per word, may be empty
  std::vector<std::vector<std::string>> key_tokens;   // per gold keyphrase
};

NormalizedDocument normalize_document(const Document& doc, const Normalizer& normalizer) {
  NormalizedDocument out;
  std::u32string cps = decode_utf8(doc.body);
  out.words = split_words(cps);

  std::vector<std::string> flat;
  std::vector<std::size_t> word_counts, key_counts;
  for (const WordRange& w : out.words) {
    std::vector<std::string> raw =
        matching_tokens(encode_utf8(std::u32string_view(cps).substr(w.begin, w.end - w.begin)));
    word_counts.push_back(raw.size());
    flat.insert(flat.end(), raw.begin(), raw.end());
  }
  for (const std::string& phrase : doc.gold_keyphrases) {
    std::vector<std::string> raw = matching_tokens(phrase);
    key_counts.push_back(raw.size());
    flat.insert(flat.end(), raw.begin(), raw.end());
  }

  std::vector<std::string> normalized = normalizer.normalize_batch(flat);
  std::size_t pos = 0;
  auto take = [&](std::size_t n) {
    std::vector<std::string> group(normalized.begin() + pos, normalized.begin() + pos + n);
    pos += n;
    return group;
  };
  for (std::size_t n : word_counts) out.word_tokens.push_back(take(n));
  for (std::size_t n : key_counts) out.key_tokens.push_back(take(n));
  return out;
}

}  // namespace

std::vector<GoldSpan> annotate_gold_spans(const Document& doc, const Normalizer& normalizer,
                                          std::size_t max_window_words) {
  NormalizedDocument nd = normalize_document(doc, normalizer);
  std::vector<GoldSpan> spans;
  for (std::size_t kp = 0; kp < nd.key_tokens.size(); ++kp) {
    const std::vector<std::string>& key = nd.key_tokens[kp];
    if (key.empty()) {
      log::warn("document " + doc.id + ": keyphrase \"" + doc.gold_keyphrases[kp] +
                "\" normalizes to nothing; skipped");
      continue;
    }
    for (std::size_t s = 0; s < nd.words.size(); ++s) {
      if (nd.word_tokens[s].empty()) continue;
      std::vector<std::string> acc;
      std::size_t last = std::min(nd.words.size(), s + max_window_words);
      for (std::size_t e = s; e < last; ++e) {
        const std::vector<std::string>& toks = nd.word_tokens[e];
        acc.insert(acc.end(), toks.begin(), toks.end());
        if (acc.size() < key.size()) continue;
        if (acc.size() == key.size() && !toks.empty() && acc == key)
          spans.push_back({nd.words[s].begin, nd.words[e].end, kp});
        break;  // longer windows from this start can only overflow or dangle
      }
    }
  }
  std::sort(spans.begin(), spans.end(), [](const GoldSpan& a, const GoldSpan& b) {
    return std::tie(a.char_start, a.char_end, a.keyphrase_index) <
           std::tie(b.char_start, b.char_end, b.keyphrase_index);
  });
  return spans;
}

StatsReport dataset_stats(const std::vector<Document>& docs,
                          const std::vector<std::vector<GoldSpan>>& spans_per_doc) {
  if (docs.size() != spans_per_doc.size())
    throw ShapeMismatch("dataset_stats: " + std::to_string(docs.size()) + " documents but " +
                        std::to_string(spans_per_doc.size()) + " span lists");
  StatsReport report;
  report.documents = docs.size();
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const std::vector<GoldSpan>& spans = spans_per_doc[d];
    report.gold_spans += spans.size();
    report.gold_keyphrases += docs[d].gold_keyphrases.size();
    std::vector<bool> has_span(docs[d].gold_keyphrases.size(), false);
    for (const GoldSpan& s : spans) has_span.at(s.keyphrase_index) = true;
    report.extractive_keyphrases +=
        static_cast<std::size_t>(std::count(has_span.begin(), has_span.end(), true));
    for (const Sentence& sent : split_sentences(docs[d].body)) {
      ++report.sentences;
      bool contains = std::any_of(spans.begin(), spans.end(), [&](const GoldSpan& s) {
        return s.char_start < sent.char_end && s.char_end > sent.char_start;
      });
      if (!contains) ++report.sentences_without_keyphrase;
    }
  }
  return report;
}

}  // namespace qbek
