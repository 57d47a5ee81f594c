#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qbek/document.hpp"

namespace qbek {

/// One ranked keyphrase emitted by the extractor.
struct PredictedKeyphrase {
  std::string text;        // surface form of the best-scoring occurrence
  std::string normalized;  // canonical matching key
  double score = 0.0;
};

struct DocumentPredictions {
  std::string id;
  std::vector<PredictedKeyphrase> keyphrases;  // sorted by rank
};

/// Reads a JSON-lines dataset: one object per line with fields "id" and
/// "body" (required), "title" (string or null), "keyphrases" (list of
/// strings), "language" (default "en"), and optionally "gold_spans" as
/// [start, end, kp_index] triples. Throws ParseError with the 1-based line
/// number on malformed lines and DuplicateId on repeated ids.
std::vector<Document> parse_dataset(const std::string& path);
std::vector<Document> parse_dataset(std::istream& in);

/// Writes documents back out, including "gold_spans" when annotated.
/// Output is deterministic (sorted keys, no timestamps), so re-running a
/// command produces byte-identical files.
void write_dataset(const std::vector<Document>& docs, const std::string& path);
void write_dataset(const std::vector<Document>& docs, std::ostream& out);

/// Predictions are JSON lines {"id", "keyphrases": [{"text", "normalized",
/// "score"}]} with the same determinism guarantees.
std::vector<DocumentPredictions> parse_predictions(const std::string& path);
void write_predictions(const std::vector<DocumentPredictions>& preds, const std::string& path);
void write_predictions(const std::vector<DocumentPredictions>& preds, std::ostream& out);

}  // namespace qbek
