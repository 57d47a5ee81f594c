#include "qbek/optimizer.hpp"

#include <cmath>

#include "qbek/errors.hpp"
#include "qbek/log.hpp"

namespace qbek {

void TrainingConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be positive and finite");
  }
  if (weight_decay < 0.0 || !std::isfinite(weight_decay)) {
    throw ConfigError("weight_decay must be non-negative and finite");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0)) {
    throw ConfigError("beta1 must lie in [0, 1)");
  }
  if (!(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("beta2 must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) {
    throw ConfigError("epsilon must be positive");
  }
  if (batch_size == 0) {
    throw ConfigError("batch_size must be at least 1");
  }
  if (eval_interval_steps == 0) {
    throw ConfigError("eval_interval_steps must be at least 1");
  }
  if (patience == 0) {
    throw ConfigError("patience must be at least 1");
  }
  if (max_steps == 0) {
    throw ConfigError("max_steps must be at least 1");
  }
  if (max_grad_norm < 0.0 || !std::isfinite(max_grad_norm)) {
    throw ConfigError("max_grad_norm must be non-negative and finite");
  }
}

SelectionMetric parse_selection_metric(const std::string& name) {
  if (name == "val_loss") return SelectionMetric::val_loss;
  if (name == "f1_at_k") return SelectionMetric::f1_at_k;
  throw ConfigError("unknown selection_metric: " + name);
}

std::string to_string(SelectionMetric metric) {
  return metric == SelectionMetric::val_loss ? "val_loss" : "f1_at_k";
}

OptimizerState OptimizerState::zeros(const EncoderConfig& config) {
  OptimizerState state;
  state.m = ModelParams::zeros(config);
  state.v = ModelParams::zeros(config);
  state.t = 0;
  return state;
}

void adamw_step(ModelParams& params, ModelParams& grads, OptimizerState& state,
                const TrainingConfig& cfg) {
  if (!grads.all_finite()) {
    log::error("optimizer: non-finite gradient, aborting step");
    throw NonFiniteGradient("gradient contains NaN or infinity");
  }

  state.t += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));

  auto theta = params.parameter_views();
  auto g = grads.parameter_views();
  auto m = state.m.parameter_views();
  auto v = state.v.parameter_views();
  if (theta.size() != g.size() || theta.size() != m.size() ||
      theta.size() != v.size()) {
    throw ShapeMismatch("optimizer state does not match parameter layout");
  }

  for (std::size_t i = 0; i < theta.size(); ++i) {
    const std::size_t n = theta[i].size();
    if (g[i].size() != n || m[i].size() != n || v[i].size() != n) {
      throw ShapeMismatch("optimizer tensor shape mismatch: " + theta[i].name);
    }
    double* tp = theta[i].data;
    const double* gp = g[i].data;
    double* mp = m[i].data;
    double* vp = v[i].data;
    for (std::size_t j = 0; j < n; ++j) {
      mp[j] = cfg.beta1 * mp[j] + (1.0 - cfg.beta1) * gp[j];
      vp[j] = cfg.beta2 * vp[j] + (1.0 - cfg.beta2) * gp[j] * gp[j];
      const double m_hat = mp[j] / bc1;
      const double v_hat = vp[j] / bc2;
      tp[j] -= cfg.learning_rate *
               (m_hat / (std::sqrt(v_hat) + cfg.epsilon) +
                cfg.weight_decay * tp[j]);
    }
  }
}

}  // namespace qbek
