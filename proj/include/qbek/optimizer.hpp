#pragma once

#include <cstdint>
#include <string>

#include "qbek/model_params.hpp"

namespace qbek {

enum class SelectionMetric { val_loss, f1_at_k };

struct TrainingConfig {
  double learning_rate = 1e-3;
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t batch_size = 8;
  std::size_t eval_interval_steps = 50;
  std::size_t patience = 3;
  std::size_t max_steps = 2000;
  std::uint64_t seed = 0;
  SelectionMetric selection_metric = SelectionMetric::val_loss;
  /// Max gradient norm for clipping; 0 disables clipping.
  double max_grad_norm = 0.0;

  /// Throws ConfigError on non-positive rates/sizes or patience < 1.
  void validate() const;
};

SelectionMetric parse_selection_metric(const std::string& name);
std::string to_string(SelectionMetric metric);

/// Adam moments, shaped like the parameters they track.
struct OptimizerState {
  ModelParams m;
  ModelParams v;
  std::uint64_t t = 0;

  static OptimizerState zeros(const EncoderConfig& config);
};

/// One decoupled-weight-decay Adam update, in place:
///   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2
///   theta <- theta - lr * ( m_hat / (sqrt(v_hat) + eps) + decay * theta )
/// with bias-corrected moments. Throws NonFiniteGradient (and logs) before
/// touching any state when the gradients contain NaN or infinity.
void adamw_step(ModelParams& params, ModelParams& grads, OptimizerState& state,
                const TrainingConfig& cfg);

}  // namespace qbek
