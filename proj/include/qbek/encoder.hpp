#pragma once

#include <random>
#include <vector>

#include "qbek/context.hpp"
#include "qbek/model_params.hpp"
#include "qbek/types.hpp"

namespace qbek {

/// Contextual token representations, one row per input position.
using EncodedSequence = Matrix;

/// Per-row layer-norm record: normalized activations plus the inverse
/// standard deviation, enough to run the backward pass.
struct LayerNormCache {
  Matrix normalized;  // (x - mean) / std, before gamma/beta
  Vector inv_std;     // one entry per row
};

struct LayerCache {
  Matrix input;                       // residual stream entering the layer
  Matrix q, k, v;                     // after the projection linears
  std::vector<Matrix> attn_probs;     // per head, softmax output
  std::vector<Matrix> attn_drop;      // per head, dropout scale factors
  Matrix attn_concat;                 // heads reassembled, before W_o
  Matrix attn_out;                    // after W_o, before dropout
  Matrix attn_out_drop;
  Matrix attn_residual;               // input + dropout(attn_out)
  LayerNormCache attn_norm;
  Matrix attn_normed;                 // stream entering the feed-forward
  Matrix ffn_pre;                     // x W1 + b1
  Matrix ffn_act;                     // gelu(ffn_pre)
  Matrix ffn_out;                     // after W2, before dropout
  Matrix ffn_out_drop;
  Matrix ffn_residual;
  LayerNormCache ffn_norm;
};

struct ForwardCache {
  bool train_mode = false;
  std::vector<bool> attend;  // false on PAD positions
  Matrix embed_sum;          // token + position + segment rows
  LayerNormCache embed_norm;
  Matrix embed_drop;
  Matrix embed_out;
  std::vector<LayerCache> layers;
};

struct ForwardResult {
  EncodedSequence hidden;
  ForwardCache cache;
};

/// Full forward pass keeping every intermediate needed by the backward
/// pass. In train mode dropout draws from `rng` (required); in eval mode
/// `rng` is ignored and the result is a deterministic function of inputs.
/// Throws ShapeMismatch when the context exceeds max_positions or carries
/// an id outside the embedding table.
ForwardResult encoder_forward(const Context& context, const ModelParams& params,
                              bool train_mode, std::mt19937_64* rng);

/// Forward pass without cache retention for callers that only need the
/// representations. Train-mode dropout is driven by a generator seeded
/// from the model seed, so repeated calls are reproducible.
EncodedSequence encode(const Context& context, const ModelParams& params,
                       bool train_mode = false);

double gelu(double x);
double gelu_derivative(double x);

}  // namespace qbek
