#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <vector>

#include "qbek/context.hpp"
#include "qbek/model_params.hpp"
#include "qbek/optimizer.hpp"

namespace qbek {

/// One row of the training log, recorded at every validation point.
/// train_loss is the mean batch loss since the previous validation.
struct TrainLogEntry {
  std::uint64_t step = 0;
  double train_loss = 0.0;
  double val_metric = 0.0;
  bool is_best = false;
};

/// Computes the validation metric for the current parameters. The trainer
/// reads cfg.selection_metric to decide direction: val_loss is minimized,
/// f1_at_k is maximized. The logged value is whatever this returns.
using ValidationFn = std::function<double(const ModelParams&)>;

struct TrainResult {
  ModelParams best_params;
  /// Optimizer moments captured right after the step that produced
  /// best_params, so a checkpoint of (best_params, best_optimizer,
  /// best_step) resumes from the best point with moments intact.
  OptimizerState best_optimizer;
  std::uint64_t best_step = 0;
  double best_metric = 0.0;
  std::uint64_t steps_run = 0;
  bool stopped_early = false;
  std::vector<TrainLogEntry> log;
};

/// Tracks the best metric seen so far and the number of evaluations since.
class EarlyStopping {
 public:
  EarlyStopping(std::size_t patience, bool higher_is_better)
      : patience_(patience), higher_better_(higher_is_better) {}

  /// Records one evaluation; returns true when it strictly improves on the
  /// best so far (the first evaluation always does).
  bool observe(double metric);

  /// True once `patience` consecutive evaluations failed to improve.
  bool should_stop() const { return evals_since_best_ >= patience_; }

  std::size_t evals_since_best() const { return evals_since_best_; }
  double best() const { return best_; }

 private:
  std::size_t patience_;
  bool higher_better_;
  bool seen_any_ = false;
  double best_ = 0.0;
  std::size_t evals_since_best_ = 0;
};

/// Mini-batch loop: shuffles contexts each epoch with a generator seeded from
/// cfg.seed, averages gradients over each batch, applies decoupled-decay Adam
/// updates, validates every cfg.eval_interval_steps steps (and at the final
/// step), and stops early after cfg.patience consecutive non-improving
/// validations or at cfg.max_steps. Returns the best-metric parameters, never
/// the last. Every context must carry gold targets.
///
/// When resuming, `start_step` offsets the step counter (the loop runs
/// steps start_step+1 .. max_steps) and `resume_state`, if non-null, seeds
/// the optimizer moments; shuffle and dropout streams restart from
/// cfg.seed, so a resumed run is deterministic but not bitwise identical
/// to an uninterrupted one.
/// Throws EmptyDataset when train_contexts is empty.
TrainResult train(const std::vector<Context>& train_contexts,
                  const ValidationFn& validation_metric,
                  const ModelParams& initial, const TrainingConfig& cfg,
                  const OptimizerState* resume_state = nullptr,
                  std::uint64_t start_step = 0);

/// CSV with header `step,train_loss,val_metric,is_best`.
void write_train_log(const std::vector<TrainLogEntry>& log, std::ostream& out);

}  // namespace qbek
