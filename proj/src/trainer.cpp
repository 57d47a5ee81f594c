#include "qbek/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "qbek/errors.hpp"
#include "qbek/gradients.hpp"
#include "qbek/log.hpp"

namespace qbek {
namespace {

/// Fisher-Yates with explicit index draws; std::shuffle's draw sequence is
/// implementation-defined, which would break cross-platform reproducibility.
void shuffle_indices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(indices[i - 1], indices[j]);
  }
}

double gradient_norm(ModelParams& grads) {
  double sum_sq = 0.0;
  for (const TensorView& view : grads.parameter_views()) {
    for (std::size_t i = 0; i < view.size(); ++i) {
      sum_sq += view.data[i] * view.data[i];
    }
  }
  return std::sqrt(sum_sq);
}

void scale_gradients(ModelParams& grads, double factor) {
  for (TensorView& view : grads.parameter_views()) {
    for (std::size_t i = 0; i < view.size(); ++i) {
      view.data[i] *= factor;
    }
  }
}

}  // namespace

bool EarlyStopping::observe(double metric) {
  const bool improved =
      !seen_any_ || (higher_better_ ? metric > best_ : metric < best_);
  seen_any_ = true;
  if (improved) {
    best_ = metric;
    evals_since_best_ = 0;
  } else {
    evals_since_best_ += 1;
  }
  return improved;
}

TrainResult train(const std::vector<Context>& train_contexts,
                  const ValidationFn& validation_metric,
                  const ModelParams& initial, const TrainingConfig& cfg,
                  const OptimizerState* resume_state, std::uint64_t start_step) {
  cfg.validate();
  if (train_contexts.empty()) {
    throw EmptyDataset("no training contexts");
  }
  for (const Context& ctx : train_contexts) {
    if (ctx.g_start.size() != static_cast<Eigen::Index>(ctx.size()) ||
        ctx.g_end.size() != static_cast<Eigen::Index>(ctx.size())) {
      throw ShapeMismatch("training context lacks gold targets: " + ctx.doc_id);
    }
  }

  ModelParams params = initial;
  OptimizerState state =
      resume_state ? *resume_state : OptimizerState::zeros(params.config);
  std::mt19937_64 shuffle_rng(cfg.seed);
  // Distinct stream so dropout draws do not depend on shuffling order.
  std::mt19937_64 dropout_rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  const bool train_mode = params.config.dropout_rate > 0.0;

  TrainResult result;
  result.best_params = params;
  result.best_optimizer = state;
  result.steps_run = start_step;
  EarlyStopping stopping(cfg.patience,
                         cfg.selection_metric == SelectionMetric::f1_at_k);

  std::vector<std::size_t> order(train_contexts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::size_t cursor = order.size();  // forces a shuffle before the first batch

  double loss_accum = 0.0;
  std::size_t loss_count = 0;
  bool have_best = false;

  for (std::uint64_t step = start_step + 1; step <= cfg.max_steps; ++step) {
    if (cursor >= order.size()) {
      shuffle_indices(order, shuffle_rng);
      cursor = 0;
    }
    const std::size_t batch_n =
        std::min(cfg.batch_size, order.size() - cursor);

    ModelParams batch_grads = ModelParams::zeros(params.config);
    double batch_loss = 0.0;
    for (std::size_t b = 0; b < batch_n; ++b) {
      const Context& ctx = train_contexts[order[cursor + b]];
      GradientResult one = compute_gradients(ctx, params, train_mode,
                                             &dropout_rng,
                                             1.0 / static_cast<double>(batch_n));
      batch_loss += one.loss;
      add_scaled(batch_grads, one.grads, 1.0);
    }
    cursor += batch_n;
    loss_accum += batch_loss;
    loss_count += 1;

    if (cfg.max_grad_norm > 0.0) {
      const double norm = gradient_norm(batch_grads);
      if (norm > cfg.max_grad_norm) {
        scale_gradients(batch_grads, cfg.max_grad_norm / norm);
        log::info("step " + std::to_string(step) + ": gradient norm " +
                  std::to_string(norm) + " clipped to " +
                  std::to_string(cfg.max_grad_norm));
      }
    }

    adamw_step(params, batch_grads, state, cfg);
    result.steps_run = step;

    const bool at_interval = step % cfg.eval_interval_steps == 0;
    if (!at_interval && step != cfg.max_steps) continue;

    const double metric = validation_metric(params);
    const bool is_best = stopping.observe(metric);
    if (is_best) {
      result.best_params = params;
      result.best_optimizer = state;
      result.best_step = step;
      result.best_metric = metric;
      have_best = true;
    }
    result.log.push_back({step, loss_count ? loss_accum / loss_count : 0.0,
                          metric, is_best});
    loss_accum = 0.0;
    loss_count = 0;

    if (stopping.should_stop()) {
      result.stopped_early = true;
      log::info("early stop at step " + std::to_string(step) + ": no improvement in " +
                std::to_string(cfg.patience) + " evaluations");
      break;
    }
  }

  if (!have_best) {
    // No evaluation ran: only possible when start_step >= max_steps, i.e. a
    // resume that has nothing left to do. Hand back the inputs unchanged.
    result.best_params = params;
    result.best_optimizer = state;
    result.best_step = result.steps_run;
  }
  return result;
}

void write_train_log(const std::vector<TrainLogEntry>& log, std::ostream& out) {
  out << "step,train_loss,val_metric,is_best\n";
  char buf[64];
  for (const TrainLogEntry& entry : log) {
    out << entry.step << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", entry.train_loss);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", entry.val_metric);
    out << buf << ',' << (entry.is_best ? 1 : 0) << '\n';
  }
}

}  // namespace qbek
