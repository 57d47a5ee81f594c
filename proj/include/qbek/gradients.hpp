#pragma once

#include <random>

#include "qbek/context.hpp"
#include "qbek/encoder.hpp"
#include "qbek/model_params.hpp"
#include "qbek/span_head.hpp"

namespace qbek {

struct GradientResult {
  double loss = 0.0;
  ModelParams grads;  // parameter-shaped gradient set
};

/// Loss plus d(loss)/d(theta) for every trainable tensor, by reverse-mode
/// differentiation through the span head and the whole encoder. The context
/// must carry gold targets. Eval-mode results are deterministic; train mode
/// applies dropout from `rng` and differentiates through the drawn masks.
/// `loss_scale` multiplies the loss and therefore every gradient.
/// Propagates NoValidPositions from the loss.
GradientResult compute_gradients(const Context& context, const ModelParams& params,
                                 bool train_mode = false, std::mt19937_64* rng = nullptr,
                                 double loss_scale = 1.0);

/// into += factor * grads, tensor by tensor.
void add_scaled(ModelParams& into, ModelParams& grads, double factor);

}  // namespace qbek
