// Command-line front end wiring datasets, vocabularies, and checkpoints
// into the annotate / stats / train / extract / eval / sweep workflows.
// Every command is deterministic given its inputs and seed, so re-running
// one produces byte-identical output files.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qbek/annotate.hpp"
#include "qbek/checkpoint.hpp"
#include "qbek/chunker.hpp"
#include "qbek/dataset_io.hpp"
#include "qbek/encoder.hpp"
#include "qbek/errors.hpp"
#include "qbek/evaluation.hpp"
#include "qbek/extractor.hpp"
#include "qbek/log.hpp"
#include "qbek/model_params.hpp"
#include "qbek/normalizer.hpp"
#include "qbek/run_config.hpp"
#include "qbek/sentence_split.hpp"
#include "qbek/span_head.hpp"
#include "qbek/trainer.hpp"
#include "qbek/vocabulary.hpp"

namespace qbek {
namespace {

/// Inputs are usage errors when absent (exit 2), not data errors.
void require_input(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw ConfigError(std::string("missing required input: ") + flag);
  }
  if (!std::filesystem::exists(value)) {
    throw ConfigError(std::string(flag) + ": no such file: " + value);
  }
}

void require_out(const std::string& out) {
  if (out.empty()) throw ConfigError("missing required output path: --out");
}

std::string format_metric(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw Error("cannot write: " + path.string());
  return out;
}

std::vector<Context> document_contexts(const Document& doc,
                                       const ChunkingConfig& chunking,
                                       const Vocabulary& vocab) {
  static const std::vector<GoldSpan> no_spans;
  return build_contexts(doc, split_sentences(doc.body),
                        doc.gold_spans ? *doc.gold_spans : no_spans, chunking,
                        vocab);
}

/// Annotates any document still missing gold spans; documents that already
/// carry spans keep them. Returns the spans of every document.
std::vector<std::vector<GoldSpan>> ensure_annotated(std::vector<Document>& docs,
                                                    const Normalizer& normalizer) {
  std::vector<std::vector<GoldSpan>> spans(docs.size());
  std::size_t annotated = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!docs[i].gold_spans) {
      docs[i].gold_spans = annotate_gold_spans(docs[i], normalizer);
      annotated += 1;
    }
    spans[i] = *docs[i].gold_spans;
  }
  if (annotated) {
    log::info(std::to_string(annotated) + " documents annotated in memory");
  }
  return spans;
}

std::vector<Context> corpus_contexts(const std::vector<Document>& docs,
                                     const ChunkingConfig& chunking,
                                     const Vocabulary& vocab) {
  std::vector<Context> all;
  for (const Document& doc : docs) {
    std::vector<Context> ctxs = document_contexts(doc, chunking, vocab);
    all.insert(all.end(), std::make_move_iterator(ctxs.begin()),
               std::make_move_iterator(ctxs.end()));
  }
  return all;
}

std::vector<DocumentPredictions> extract_corpus(
    const std::vector<Document>& docs, const ModelParams& params,
    const ExtractionConfig& extraction, ChunkingConfig chunking,
    const Vocabulary& vocab, const Normalizer& normalizer) {
  chunking.mode = ChunkMode::infer;
  std::vector<DocumentPredictions> preds;
  preds.reserve(docs.size());
  for (const Document& doc : docs) {
    DocumentPredictions dp;
    dp.id = doc.id;
    for (const KeyphraseResult& kp :
         extract_document(doc, document_contexts(doc, chunking, vocab), params,
                          extraction, normalizer)) {
      dp.keyphrases.push_back({kp.surface, kp.normalized_form, kp.score});
    }
    preds.push_back(std::move(dp));
  }
  return preds;
}

/// The returned function borrows cfg, val_docs, vocab, and normalizer; use
/// it only while they live (train() runs synchronously, so command scopes
/// satisfy this).
ValidationFn make_validation(const RunConfig& cfg,
                             const std::vector<Document>& val_docs,
                             const Vocabulary& vocab,
                             const Normalizer& normalizer) {
  if (cfg.training.selection_metric == SelectionMetric::val_loss) {
    ChunkingConfig chunking = cfg.chunking;
    chunking.mode = ChunkMode::train;
    std::vector<Context> contexts = corpus_contexts(val_docs, chunking, vocab);
    if (contexts.empty()) throw EmptyDataset("no validation contexts");
    return [contexts](const ModelParams& params) {
      double total = 0.0;
      for (const Context& ctx : contexts) {
        total += span_loss(token_probabilities(encode(ctx, params), params, ctx),
                           ctx.g_start, ctx.g_end);
      }
      return total / static_cast<double>(contexts.size());
    };
  }
  return [&cfg, &val_docs, &vocab, &normalizer](const ModelParams& params) {
    const auto preds = extract_corpus(val_docs, params, cfg.extraction,
                                      cfg.chunking, vocab, normalizer);
    return f1_at_k(preds, val_docs, cfg.extraction.top_k, normalizer).f1;
  };
}

/// Shared by train and sweep: builds training contexts, wires the selected
/// validation metric, and runs the optimization loop.
TrainResult fit(const std::vector<Document>& train_docs,
                const std::vector<Document>& val_docs, const RunConfig& cfg,
                const Vocabulary& vocab, const Normalizer& normalizer,
                const OptimizerState* resume_state = nullptr,
                std::uint64_t start_step = 0,
                const ModelParams* initial = nullptr) {
  ChunkingConfig chunking = cfg.chunking;
  chunking.mode = ChunkMode::train;
  const std::vector<Context> contexts = corpus_contexts(train_docs, chunking, vocab);
  const ValidationFn validation = make_validation(cfg, val_docs, vocab, normalizer);
  const ModelParams params = initial ? *initial : ModelParams::init(cfg.encoder);
  return train(contexts, validation, params, cfg.training, resume_state, start_step);
}

void print_stats(const StatsReport& stats) {
  char frac[32], ratio[32];
  std::snprintf(frac, sizeof(frac), "%.4f", stats.fraction_sentences_without_keyphrase());
  std::snprintf(ratio, sizeof(ratio), "%.4f", stats.extractive_ratio());
  std::cout << "documents: " << stats.documents << '\n'
            << "sentences: " << stats.sentences << '\n'
            << "sentences_without_keyphrase: " << stats.sentences_without_keyphrase
            << " (fraction " << frac << ")\n"
            << "gold_keyphrases: " << stats.gold_keyphrases << '\n'
            << "extractive_keyphrases: " << stats.extractive_keyphrases
            << " (ratio " << ratio << ")\n"
            << "gold_spans: " << stats.gold_spans << '\n';
}

/// One row per (window, query) setting: the fraction of sentence windows
/// whose assembled input exceeds the token limit before splitting.
void write_saturation_csv(std::ostream& out, const std::vector<Document>& docs,
                          const RunConfig& cfg, const Vocabulary& vocab) {
  out << "window_sentences,with_query,fraction\n";
  for (std::size_t window : cfg.sweep_windows) {
    for (bool with_query : {false, true}) {
      ChunkingConfig chunking = cfg.chunking;
      chunking.window_sentences = window;
      chunking.with_query = with_query;
      out << window << ',' << (with_query ? "true" : "false") << ','
          << format_metric(saturation_fraction(docs, chunking, vocab)) << '\n';
    }
  }
}

int cmd_annotate(const RunConfig& cfg) {
  require_input(cfg.dataset, "--dataset");
  require_out(cfg.out);
  const auto normalizer = make_normalizer(cfg.normalizer);
  std::vector<Document> docs = parse_dataset(cfg.dataset);
  std::vector<std::vector<GoldSpan>> spans;
  spans.reserve(docs.size());
  for (Document& doc : docs) {
    doc.gold_spans = annotate_gold_spans(doc, *normalizer);
    spans.push_back(*doc.gold_spans);
  }
  write_dataset(docs, cfg.out);
  write_effective_config(cfg, cfg.out + ".effective-config");
  print_stats(dataset_stats(docs, spans));
  return 0;
}

int cmd_stats(const RunConfig& cfg) {
  require_input(cfg.dataset, "--dataset");
  require_input(cfg.vocab, "--vocab");
  const auto normalizer = make_normalizer(cfg.normalizer);
  const Vocabulary vocab = Vocabulary::load(cfg.vocab);
  std::vector<Document> docs = parse_dataset(cfg.dataset);
  const auto spans = ensure_annotated(docs, *normalizer);
  print_stats(dataset_stats(docs, spans));
  if (cfg.out.empty()) {
    std::cout << '\n';
    write_saturation_csv(std::cout, docs, cfg, vocab);
  } else {
    auto out = open_output(cfg.out);
    write_saturation_csv(out, docs, cfg, vocab);
    write_effective_config(cfg, cfg.out + ".effective-config");
  }
  return 0;
}

int cmd_train(RunConfig cfg) {
  require_input(cfg.dataset, "--dataset");
  require_input(cfg.vocab, "--vocab");
  require_out(cfg.out);
  if (!cfg.val_dataset.empty()) require_input(cfg.val_dataset, "--val-dataset");
  if (!cfg.checkpoint.empty()) require_input(cfg.checkpoint, "--checkpoint");

  const Vocabulary vocab = Vocabulary::load(cfg.vocab);
  cfg.encoder.vocab_size = static_cast<std::size_t>(vocab.size());
  cfg.encoder.validate();
  const auto normalizer = make_normalizer(cfg.normalizer);

  std::vector<Document> docs = parse_dataset(cfg.dataset);
  ensure_annotated(docs, *normalizer);
  std::vector<Document> val_storage;
  const std::vector<Document>* val_docs = &docs;  // default: validate on the training set
  if (!cfg.val_dataset.empty()) {
    val_storage = parse_dataset(cfg.val_dataset);
    ensure_annotated(val_storage, *normalizer);
    val_docs = &val_storage;
  }

  ModelParams initial = ModelParams::init(cfg.encoder);
  Checkpoint resume;
  const OptimizerState* resume_state = nullptr;
  std::uint64_t start_step = 0;
  if (!cfg.checkpoint.empty()) {
    resume = load_checkpoint(cfg.checkpoint, vocab.content_hash());
    if (!(resume.params.config == cfg.encoder)) {
      log::info("resume: model shape taken from the checkpoint");
    }
    cfg.encoder = resume.params.config;  // the echoed config records what ran
    initial = resume.params;
    if (resume.optimizer) {
      resume_state = &*resume.optimizer;
    } else {
      log::info("resume: checkpoint has no optimizer state; moments restart at zero");
    }
    start_step = resume.step;
  }

  const TrainResult result =
      fit(docs, *val_docs, cfg, vocab, *normalizer, resume_state, start_step, &initial);

  const std::filesystem::path out_dir(cfg.out);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path ckpt_path = out_dir / "checkpoint.bin";
  save_checkpoint({result.best_params, result.best_optimizer, result.best_step,
                   vocab.content_hash()},
                  ckpt_path);
  {
    auto log_out = open_output(out_dir / "train_log.csv");
    write_train_log(result.log, log_out);
  }
  write_effective_config(cfg, (out_dir / "effective-config.txt").string());

  std::cout << "best_step: " << result.best_step << '\n'
            << "best_metric: " << format_metric(result.best_metric) << '\n'
            << "steps_run: " << result.steps_run << '\n'
            << "stopped_early: " << (result.stopped_early ? "true" : "false") << '\n'
            << "checkpoint: " << ckpt_path.string() << '\n';
  return 0;
}

int cmd_extract(const RunConfig& cfg) {
  require_input(cfg.dataset, "--dataset");
  require_input(cfg.vocab, "--vocab");
  require_input(cfg.checkpoint, "--checkpoint");
  require_out(cfg.out);
  const Vocabulary vocab = Vocabulary::load(cfg.vocab);
  const Checkpoint ckpt = load_checkpoint(cfg.checkpoint, vocab.content_hash());
  const auto normalizer = make_normalizer(cfg.normalizer);
  const std::vector<Document> docs = parse_dataset(cfg.dataset);

  const auto preds = extract_corpus(docs, ckpt.params, cfg.extraction,
                                    cfg.chunking, vocab, *normalizer);
  write_predictions(preds, cfg.out);
  write_effective_config(cfg, cfg.out + ".effective-config");
  std::cout << "documents: " << preds.size() << '\n'
            << "warnings: " << log::warning_count() << '\n';
  return 0;
}

int cmd_eval(const RunConfig& cfg) {
  require_input(cfg.dataset, "--dataset");
  require_input(cfg.predictions, "--predictions");
  const auto normalizer = make_normalizer(cfg.normalizer);
  const std::vector<Document> docs = parse_dataset(cfg.dataset);
  const auto preds = parse_predictions(cfg.predictions);

  const EvalReport report = f1_at_k(preds, docs, cfg.extraction.top_k, *normalizer);
  write_eval_report_text(report, std::cout);
  if (!cfg.out.empty()) {
    auto out = open_output(cfg.out);
    write_eval_report_csv(report, out);
    write_effective_config(cfg, cfg.out + ".effective-config");
  }
  return 0;
}

int cmd_sweep(RunConfig cfg) {
  require_input(cfg.dataset, "--dataset");
  require_input(cfg.vocab, "--vocab");
  require_out(cfg.out);
  if (!cfg.val_dataset.empty()) require_input(cfg.val_dataset, "--val-dataset");
  if (cfg.sweep_windows.empty()) throw ConfigError("sweep_windows is empty");
  if (cfg.sweep_seeds.empty()) throw ConfigError("sweep_seeds is empty");

  const Vocabulary vocab = Vocabulary::load(cfg.vocab);
  cfg.encoder.vocab_size = static_cast<std::size_t>(vocab.size());
  cfg.encoder.validate();
  const auto normalizer = make_normalizer(cfg.normalizer);

  std::vector<Document> docs = parse_dataset(cfg.dataset);
  ensure_annotated(docs, *normalizer);
  std::vector<Document> val_storage;
  const std::vector<Document>* val_docs = &docs;
  if (!cfg.val_dataset.empty()) {
    val_storage = parse_dataset(cfg.val_dataset);
    ensure_annotated(val_storage, *normalizer);
    val_docs = &val_storage;
  }

  const std::filesystem::path out_dir(cfg.out);
  std::filesystem::create_directories(out_dir);

  std::vector<SweepRun> runs;
  std::vector<std::string> failures;
  for (std::size_t window : cfg.sweep_windows) {
    for (bool with_query : {false, true}) {
      for (std::uint64_t seed : cfg.sweep_seeds) {
        RunConfig cell = cfg;
        cell.chunking.window_sentences = window;
        cell.chunking.with_query = with_query;
        cell.seed = seed;
        cell.fan_out_seed();
        const std::string label = "window=" + std::to_string(window) +
                                  " with_query=" + (with_query ? "true" : "false") +
                                  " seed=" + std::to_string(seed);
        try {
          const TrainResult fitted = fit(docs, *val_docs, cell, vocab, *normalizer);
          const auto preds =
              extract_corpus(*val_docs, fitted.best_params, cell.extraction,
                             cell.chunking, vocab, *normalizer);
          runs.push_back({window, with_query,
                          f1_at_k(preds, *val_docs, cell.extraction.top_k, *normalizer)});
          log::info("sweep cell done: " + label);
        } catch (const Error& e) {
          // Record and move on so one broken cell cannot sink the rest.
          failures.push_back(label + ": " + e.what());
          log::error("sweep cell failed: " + label + ": " + e.what());
        }
      }
    }
  }

  {
    auto out = open_output(out_dir / "sweep.csv");
    sweep_report(runs, out);
  }
  {
    auto out = open_output(out_dir / "saturation.csv");
    write_saturation_csv(out, docs, cfg, vocab);
  }
  write_effective_config(cfg, (out_dir / "effective-config.txt").string());

  const auto failures_path = out_dir / "failures.txt";
  if (failures.empty()) {
    std::filesystem::remove(failures_path);  // drop any stale record
    std::cout << "cells: " << runs.size() << '\n';
    return 0;
  }
  auto out = open_output(failures_path);
  for (const std::string& line : failures) out << line << '\n';
  std::cout << "cells: " << runs.size() << '\n'
            << "failed_cells: " << failures.size() << '\n';
  return 1;
}

struct CommonFlags {
  std::string config;
  std::string dataset, val_dataset, vocab, checkpoint, predictions, out;
  std::uint64_t window_sentences = 0;
  bool with_query = true;
  std::uint64_t top_k = 0;
  std::uint64_t max_input_size = 0;
  std::uint64_t seed = 0;
  std::string windows, seeds;
};

void add_common_options(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "key=value configuration file, applied before flags");
  cmd->add_option("--dataset", flags.dataset, "input dataset (JSON lines)");
  cmd->add_option("--val-dataset", flags.val_dataset, "validation dataset; defaults to --dataset");
  cmd->add_option("--vocab", flags.vocab, "vocabulary file, one entry per line");
  cmd->add_option("--checkpoint", flags.checkpoint, "model checkpoint to load");
  cmd->add_option("--predictions", flags.predictions, "predictions file (JSON lines)");
  cmd->add_option("--window-sentences", flags.window_sentences, "sentences per context window");
  cmd->add_flag("--with-query,!--no-query", flags.with_query, "prefix the document title to every context");
  cmd->add_option("--top-k", flags.top_k, "keyphrases kept per document");
  cmd->add_option("--max-input-size", flags.max_input_size, "token limit per model input");
  cmd->add_option("--seed", flags.seed, "master random seed");
  cmd->add_option("--out", flags.out, "output file (annotate/extract/eval/stats) or directory (train/sweep)");
  cmd->add_option("--windows", flags.windows, "comma-separated window sizes for sweep");
  cmd->add_option("--seeds", flags.seeds, "comma-separated seeds for sweep");
}

/// Defaults, then the config file, then explicitly passed flags.
RunConfig build_config(CLI::App* cmd, const CommonFlags& flags) {
  RunConfig cfg;
  if (cmd->count("--config")) load_config_file(cfg, flags.config);
  if (cmd->count("--dataset")) cfg.dataset = flags.dataset;
  if (cmd->count("--val-dataset")) cfg.val_dataset = flags.val_dataset;
  if (cmd->count("--vocab")) cfg.vocab = flags.vocab;
  if (cmd->count("--checkpoint")) cfg.checkpoint = flags.checkpoint;
  if (cmd->count("--predictions")) cfg.predictions = flags.predictions;
  if (cmd->count("--out")) cfg.out = flags.out;
  if (cmd->count("--window-sentences")) cfg.chunking.window_sentences = flags.window_sentences;
  if (cmd->count("--with-query")) cfg.chunking.with_query = flags.with_query;
  if (cmd->count("--top-k")) cfg.extraction.top_k = flags.top_k;
  if (cmd->count("--max-input-size")) cfg.chunking.max_input_size = flags.max_input_size;
  if (cmd->count("--seed")) cfg.seed = flags.seed;
  if (cmd->count("--windows")) apply_config_value(cfg, "sweep_windows", flags.windows);
  if (cmd->count("--seeds")) apply_config_value(cfg, "sweep_seeds", flags.seeds);
  cfg.fan_out_seed();
  cfg.validate();
  return cfg;
}

}  // namespace
}  // namespace qbek

int main(int argc, char** argv) {
  using namespace qbek;

  CLI::App app{"Keyphrase extraction with query-conditioned sentence-window contexts"};
  app.require_subcommand(1);
  CommonFlags flags;

  CLI::App* annotate = app.add_subcommand(
      "annotate", "Locate gold keyphrases in document bodies and write the annotated dataset");
  CLI::App* stats = app.add_subcommand(
      "stats", "Report annotation coverage and context saturation");
  CLI::App* train_cmd = app.add_subcommand(
      "train", "Train a model and keep the best checkpoint");
  CLI::App* extract = app.add_subcommand(
      "extract", "Predict keyphrases for every document");
  CLI::App* eval = app.add_subcommand(
      "eval", "Score predictions against gold keyphrases");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Train, extract, and evaluate over window sizes, query settings, and seeds");
  for (CLI::App* cmd : {annotate, stats, train_cmd, extract, eval, sweep}) {
    add_common_options(cmd, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help and --version exit cleanly
  }

  log::reset_warning_count();
  try {
    CLI::App* cmd = app.get_subcommands().front();
    const RunConfig cfg = build_config(cmd, flags);
    if (cmd == annotate) return cmd_annotate(cfg);
    if (cmd == stats) return cmd_stats(cfg);
    if (cmd == train_cmd) return cmd_train(cfg);
    if (cmd == extract) return cmd_extract(cfg);
    if (cmd == eval) return cmd_eval(cfg);
    return cmd_sweep(cfg);
  } catch (const ConfigError& e) {
    log::error(e.what());
    return 2;
  } catch (const Error& e) {
    log::error(e.what());
    return 1;
  } catch (const std::exception& e) {
    log::error(e.what());
    return 1;
  }
}
