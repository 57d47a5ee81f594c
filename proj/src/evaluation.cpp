#include "qbek/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "qbek/errors.hpp"

namespace qbek {
namespace {

/// Normalized forms of `phrases`, deduplicated keeping first occurrences,
/// empty forms dropped, order preserved.
std::vector<std::string> unique_normalized(const std::vector<std::string>& phrases,
                                           const Normalizer& normalizer) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const std::string& phrase : phrases) {
    std::string key = normalize_keyphrase(phrase, normalizer);
    if (key.empty()) continue;
    if (seen.insert(key).second) out.push_back(std::move(key));
  }
  return out;
}

double safe_ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double f1_from(double precision, double recall) {
  const double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

void print_g17(std::ostream& out, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out << buf;
}

/// Regularized incomplete beta I_x(a, b) by the Lentz continued fraction.
double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // The front factor is symmetric under (a,b,x) -> (b,a,1-x).
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);

  // The continued fraction converges fastest for x < (a+1)/(a+b+2); past
  // that point evaluate the mirrored fraction and use
  // I_x(a,b) = 1 - I_{1-x}(b,a).
  const bool mirrored = x > (a + 1.0) / (a + b + 2.0);
  if (mirrored) {
    std::swap(a, b);
    x = 1.0 - x;
  }

  const double tiny = 1e-300;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 400; ++m) {
    const double dm = static_cast<double>(m);
    double numerator = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
    d = 1.0 + numerator * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + numerator / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    numerator = -(a + dm) * (a + b + dm) * x /
                ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
    d = 1.0 + numerator * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + numerator / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double value = front * h / a;
  return mirrored ? 1.0 - value : value;
}

double student_t_cdf(double t, double df) {
  const double x = df / (df + t * t);
  const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

}  // namespace

EvalReport f1_at_k(const std::vector<DocumentPredictions>& predictions,
                   const std::vector<Document>& corpus, std::size_t k,
                   const Normalizer& normalizer) {
  std::unordered_map<std::string, const Document*> by_id;
  for (const Document& doc : corpus) by_id[doc.id] = &doc;

  EvalReport report;
  report.k = k;
  std::unordered_set<std::string> scored;
  for (const DocumentPredictions& doc_preds : predictions) {
    if (!scored.insert(doc_preds.id).second) {
      throw DuplicateId(doc_preds.id);
    }
    auto it = by_id.find(doc_preds.id);
    if (it == by_id.end()) throw MissingGold(doc_preds.id);

    std::vector<std::string> top_surfaces;
    for (const PredictedKeyphrase& pred : doc_preds.keyphrases) {
      if (top_surfaces.size() == k) break;
      top_surfaces.push_back(pred.text);
    }
    const std::vector<std::string> pred_keys =
        unique_normalized(top_surfaces, normalizer);
    const std::vector<std::string> gold_keys =
        unique_normalized(it->second->gold_keyphrases, normalizer);

    const std::unordered_set<std::string> gold_set(gold_keys.begin(),
                                                   gold_keys.end());
    DocEval doc_eval;
    doc_eval.doc_id = doc_preds.id;
    doc_eval.predicted = pred_keys.size();
    doc_eval.gold = gold_keys.size();
    for (const std::string& key : pred_keys) {
      if (gold_set.count(key)) doc_eval.matched += 1;
    }

    report.matched += doc_eval.matched;
    report.predicted += doc_eval.predicted;
    report.gold += doc_eval.gold;
    report.per_document.push_back(std::move(doc_eval));
  }

  report.precision = safe_ratio(report.matched, report.predicted);
  report.recall = safe_ratio(report.matched, report.gold);
  report.f1 = f1_from(report.precision, report.recall);
  return report;
}

void write_eval_report_text(const EvalReport& report, std::ostream& out) {
  out << "documents: " << report.per_document.size() << "\n"
      << "k: " << report.k << "\n"
      << "matched: " << report.matched << "\n"
      << "predicted: " << report.predicted << "\n"
      << "gold: " << report.gold << "\n";
  out << "precision: ";
  print_g17(out, report.precision);
  out << "\nrecall: ";
  print_g17(out, report.recall);
  out << "\nf1: ";
  print_g17(out, report.f1);
  out << "\n";
}

void write_eval_report_csv(const EvalReport& report, std::ostream& out) {
  out << "doc_id,matched,predicted,gold,precision,recall,f1\n";
  auto row = [&out](const std::string& id, std::size_t matched,
                    std::size_t predicted, std::size_t gold) {
    const double precision = safe_ratio(matched, predicted);
    const double recall = safe_ratio(matched, gold);
    out << id << ',' << matched << ',' << predicted << ',' << gold << ',';
    print_g17(out, precision);
    out << ',';
    print_g17(out, recall);
    out << ',';
    print_g17(out, f1_from(precision, recall));
    out << '\n';
  };
  for (const DocEval& doc : report.per_document) {
    row(doc.doc_id, doc.matched, doc.predicted, doc.gold);
  }
  row("ALL", report.matched, report.predicted, report.gold);
}

double student_t_quantile(double p, std::size_t df) {
  if (df == 0) throw ConfigError("student_t_quantile needs df >= 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw ConfigError("student_t_quantile needs p in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile(1.0 - p, df);

  const double ddf = static_cast<double>(df);
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_cdf(hi, ddf) < p && hi < 1e300) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, ddf) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

MeanCi mean_ci95(const std::vector<double>& values) {
  MeanCi ci;
  ci.n = values.size();
  if (ci.n == 0) return ci;
  double sum = 0.0;
  for (double v : values) sum += v;
  ci.mean = sum / static_cast<double>(ci.n);
  if (ci.n < 2) return ci;

  double sq = 0.0;
  for (double v : values) sq += (v - ci.mean) * (v - ci.mean);
  const double sd = std::sqrt(sq / static_cast<double>(ci.n - 1));
  const double t = student_t_quantile(0.975, ci.n - 1);
  ci.half_width = t * sd / std::sqrt(static_cast<double>(ci.n));
  return ci;
}

void sweep_report(const std::vector<SweepRun>& runs, std::ostream& out) {
  out << "window_sentences,with_query,precision,recall,f1\n";
  for (const SweepRun& run : runs) {
    out << run.window_sentences << ',' << (run.with_query ? "true" : "false")
        << ',';
    print_g17(out, run.report.precision);
    out << ',';
    print_g17(out, run.report.recall);
    out << ',';
    print_g17(out, run.report.f1);
    out << '\n';
  }
  if (runs.empty()) return;

  std::map<std::pair<std::size_t, bool>, std::vector<double>> groups;
  for (const SweepRun& run : runs) {
    groups[{run.window_sentences, run.with_query}].push_back(run.report.f1);
  }
  out << "\nwindow_sentences,with_query,n,f1_mean,f1_ci95_low,f1_ci95_high\n";
  for (const auto& [setting, f1s] : groups) {
    const MeanCi ci = mean_ci95(f1s);
    out << setting.first << ',' << (setting.second ? "true" : "false") << ','
        << ci.n << ',';
    print_g17(out, ci.mean);
    out << ',';
    print_g17(out, ci.mean - ci.half_width);
    out << ',';
    print_g17(out, ci.mean + ci.half_width);
    out << '\n';
  }
}

}  // namespace qbek
