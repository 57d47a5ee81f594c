#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qbek/types.hpp"

namespace qbek {

/// Architecture of the desk-scale encoder. Kept deliberately small; the
/// span head works on top of whatever hidden size is configured.
struct EncoderConfig {
  std::size_t num_layers = 2;
  std::size_t hidden_size = 64;
  std::size_t num_heads = 4;
  std::size_t ffn_size = 256;
  std::size_t vocab_size = 0;
  std::size_t max_positions = 512;
  std::size_t num_segments = 2;
  double dropout_rate = 0.1;
  bool shared_bias = false;  // one scalar bias for both heads when true
  double init_std = 0.02;
  std::uint64_t seed = 0;

  std::size_t head_size() const { return hidden_size / num_heads; }
  /// Throws ConfigError unless sizes are positive, hidden_size divides
  /// evenly into heads, and dropout_rate lies in [0, 1).
  void validate() const;

  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

struct LayerParams {
  Matrix wq, wk, wv, wo;      // hidden x hidden
  Vector bq, bk, bv, bo;      // hidden
  Vector attn_gamma, attn_beta;
  Matrix w1;                  // hidden x ffn
  Vector b1;                  // ffn
  Matrix w2;                  // ffn x hidden
  Vector b2;                  // hidden
  Vector ffn_gamma, ffn_beta;
};

/// Borrowed view of one parameter tensor; `data` aliases the owning
/// ModelParams (Eigen column-major storage order for matrices).
struct TensorView {
  std::string name;
  double* data = nullptr;
  std::size_t rows = 0, cols = 0;

  std::size_t size() const { return rows * cols; }
};

struct ModelParams {
  EncoderConfig config;
  Matrix token_embeddings;     // vocab x hidden
  Matrix position_embeddings;  // max_positions x hidden
  Matrix segment_embeddings;   // num_segments x hidden
  Vector embed_gamma, embed_beta;
  std::vector<LayerParams> layers;
  Vector w_start, w_end;  // span head weights
  double b_start = 0.0;
  double b_end = 0.0;

  /// All-zero parameter set with the config's shapes (gradient holder).
  static ModelParams zeros(const EncoderConfig& config);
  /// Gaussian(0, init_std) weights from a seeded generator with a fixed
  /// sampling scheme, zero biases, identity layer norms. Reproducible
  /// across platforms.
  static ModelParams init(const EncoderConfig& config);

  /// End-head bias honouring shared_bias.
  double end_bias() const { return config.shared_bias ? b_start : b_end; }

  /// Stable named views over every trainable tensor, scalars included.
  /// Order and names are fixed; they define the checkpoint layout and the
  /// optimizer state pairing. With shared_bias the end bias is absent.
  std::vector<TensorView> parameter_views();

  bool all_finite() const;
};

}  // namespace qbek
