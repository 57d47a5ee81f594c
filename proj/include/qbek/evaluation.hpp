#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qbek/dataset_io.hpp"
#include "qbek/document.hpp"
#include "qbek/normalizer.hpp"

namespace qbek {

struct DocEval {
  std::string doc_id;
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

/// Micro-averaged counts: precision = matched/predicted, recall =
/// matched/gold, f1 = 2PR/(P+R), each 0 when its denominator is 0.
struct EvalReport {
  std::size_t k = 0;
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<DocEval> per_document;
};

/// Scores every document in `predictions` against the corpus golds: takes
/// each document's top min(k, available) predictions, normalizes surfaces
/// and gold keyphrases, deduplicates both sides keeping first occurrences
/// (forms normalizing to the empty string are dropped), counts the
/// intersection, and micro-aggregates over documents. Gold keyphrases
/// absent from the text still count in the recall denominator.
/// Throws MissingGold when a scored doc_id has no corpus entry and
/// DuplicateId when the prediction list repeats one.
EvalReport f1_at_k(const std::vector<DocumentPredictions>& predictions,
                   const std::vector<Document>& corpus, std::size_t k,
                   const Normalizer& normalizer);

void write_eval_report_text(const EvalReport& report, std::ostream& out);

/// CSV `doc_id,matched,predicted,gold,precision,recall,f1`: one row per
/// document (per-doc P/R/F1 from that document's counts) plus a final ALL
/// row with the micro-averaged totals.
void write_eval_report_csv(const EvalReport& report, std::ostream& out);

/// Two-sided Student-t quantile: the x with P(T_df <= x) = p. Bisection on
/// the CDF (regularized incomplete beta), accurate to ~1e-12.
double student_t_quantile(double p, std::size_t df);

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;  // 0 when fewer than two values
  std::size_t n = 0;
};

/// Sample mean with a 0.95 confidence half-width via Student-t on the
/// sample standard deviation (n-1 denominator).
MeanCi mean_ci95(const std::vector<double>& values);

struct SweepRun {
  std::size_t window_sentences = 0;
  bool with_query = false;
  EvalReport report;
};

/// CSV `window_sentences,with_query,precision,recall,f1`, one row per run
/// in input order. When any runs exist, a blank line and a second table
/// `window_sentences,with_query,n,f1_mean,f1_ci95_low,f1_ci95_high` follow,
/// one row per distinct setting (sorted), aggregating that setting's F1
/// values across runs.
void sweep_report(const std::vector<SweepRun>& runs, std::ostream& out);

}  // namespace qbek
