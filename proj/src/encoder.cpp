#include "qbek/encoder.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qbek/errors.hpp"

namespace qbek {
namespace {

constexpr double kLayerNormEpsilon = 1e-12;

Matrix layer_norm(const Matrix& x, const Vector& gamma, const Vector& beta,
                  LayerNormCache& cache) {
  const Index rows = x.rows(), cols = x.cols();
  cache.normalized.resize(rows, cols);
  cache.inv_std.resize(rows);
  Matrix out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    double mean = x.row(r).mean();
    double var = (x.row(r).array() - mean).square().mean();
    double inv = 1.0 / std::sqrt(var + kLayerNormEpsilon);
    cache.inv_std[r] = inv;
    cache.normalized.row(r) = (x.row(r).array() - mean) * inv;
    out.row(r) = cache.normalized.row(r).cwiseProduct(gamma.transpose()) + beta.transpose();
  }
  return out;
}

// Inverted-dropout scale factors: 0 with probability p, 1/(1-p) otherwise.
Matrix dropout_mask(Index rows, Index cols, double p, std::mt19937_64& rng) {
  Matrix mask(rows, cols);
  double keep_scale = 1.0 / (1.0 - p);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      double u = static_cast<double>(rng() >> 11) * 0x1p-53;
      mask(r, c) = u < p ? 0.0 : keep_scale;
    }
  return mask;
}

Matrix linear(const Matrix& x, const Matrix& w, const Vector& b) {
  return (x * w).rowwise() + b.transpose();
}

}  // namespace

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * M_SQRT1_2)); }

double gelu_derivative(double x) {
  return 0.5 * (1.0 + std::erf(x * M_SQRT1_2)) +
         x * std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

ForwardResult encoder_forward(const Context& context, const ModelParams& params,
                              bool train_mode, std::mt19937_64* rng) {
  const EncoderConfig& cfg = params.config;
  const auto T = static_cast<Index>(context.size());
  if (context.size() > cfg.max_positions)
    throw ShapeMismatch("context of " + std::to_string(context.size()) +
                        " tokens exceeds max_positions " + std::to_string(cfg.max_positions));
  if (T == 0) throw ShapeMismatch("cannot encode an empty context");
  if (train_mode && cfg.dropout_rate > 0.0 && rng == nullptr)
    throw ConfigError("train-mode forward needs a dropout generator");
  const auto H = static_cast<Index>(cfg.hidden_size);
  const auto heads = static_cast<Index>(cfg.num_heads);
  const Index dh = H / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const bool drop = train_mode && cfg.dropout_rate > 0.0;

  ForwardResult result;
  ForwardCache& cache = result.cache;
  cache.train_mode = drop;
  cache.attend.resize(context.size());
  for (std::size_t i = 0; i < context.size(); ++i)
    cache.attend[i] = context.kinds[i] != TokenKind::pad;

  cache.embed_sum.resize(T, H);
  for (Index t = 0; t < T; ++t) {
    auto id = context.ids[static_cast<std::size_t>(t)];
    auto segment = context.segment_ids[static_cast<std::size_t>(t)];
    if (id < 0 || id >= params.token_embeddings.rows())
      throw ShapeMismatch("token id " + std::to_string(id) + " outside vocabulary of " +
                          std::to_string(params.token_embeddings.rows()));
    if (segment < 0 || segment >= params.segment_embeddings.rows())
      throw ShapeMismatch("segment id " + std::to_string(segment) + " outside table");
    cache.embed_sum.row(t) = params.token_embeddings.row(id) +
                             params.position_embeddings.row(t) +
                             params.segment_embeddings.row(segment);
  }
  Matrix h = layer_norm(cache.embed_sum, params.embed_gamma, params.embed_beta,
                        cache.embed_norm);
  if (drop) {
    cache.embed_drop = dropout_mask(T, H, cfg.dropout_rate, *rng);
    h = h.cwiseProduct(cache.embed_drop);
  }
  cache.embed_out = h;

  cache.layers.resize(cfg.num_layers);
  for (std::size_t layer = 0; layer < cfg.num_layers; ++layer) {
    const LayerParams& lp = params.layers[layer];
    LayerCache& lc = cache.layers[layer];
    lc.input = h;
    lc.q = linear(h, lp.wq, lp.bq);
    lc.k = linear(h, lp.wk, lp.bk);
    lc.v = linear(h, lp.wv, lp.bv);
    lc.attn_probs.resize(static_cast<std::size_t>(heads));
    lc.attn_drop.resize(static_cast<std::size_t>(heads));
    lc.attn_concat.resize(T, H);
    for (Index head = 0; head < heads; ++head) {
      auto qh = lc.q.middleCols(head * dh, dh);
      auto kh = lc.k.middleCols(head * dh, dh);
      auto vh = lc.v.middleCols(head * dh, dh);
      Matrix scores = qh * kh.transpose() * scale;
      for (Index c = 0; c < T; ++c)
        if (!cache.attend[static_cast<std::size_t>(c)])
          scores.col(c).setConstant(-std::numeric_limits<double>::infinity());
      Matrix probs(T, T);
      for (Index r = 0; r < T; ++r) {
        double mx = scores.row(r).maxCoeff();
        Vector e = (scores.row(r).transpose().array() - mx).exp().matrix();
        probs.row(r) = e.transpose() / e.sum();
      }
      lc.attn_probs[static_cast<std::size_t>(head)] = probs;
      Matrix attended = probs;
      if (drop) {
        lc.attn_drop[static_cast<std::size_t>(head)] =
            dropout_mask(T, T, cfg.dropout_rate, *rng);
        attended = attended.cwiseProduct(lc.attn_drop[static_cast<std::size_t>(head)]);
      }
      lc.attn_concat.middleCols(head * dh, dh) = attended * vh;
    }
    lc.attn_out = linear(lc.attn_concat, lp.wo, lp.bo);
    Matrix attn_dropped = lc.attn_out;
    if (drop) {
      lc.attn_out_drop = dropout_mask(T, H, cfg.dropout_rate, *rng);
      attn_dropped = attn_dropped.cwiseProduct(lc.attn_out_drop);
    }
    lc.attn_residual = lc.input + attn_dropped;
    lc.attn_normed = layer_norm(lc.attn_residual, lp.attn_gamma, lp.attn_beta, lc.attn_norm);

    lc.ffn_pre = linear(lc.attn_normed, lp.w1, lp.b1);
    lc.ffn_act = lc.ffn_pre.unaryExpr([](double x) { return gelu(x); });
    lc.ffn_out = linear(lc.ffn_act, lp.w2, lp.b2);
    Matrix ffn_dropped = lc.ffn_out;
    if (drop) {
      lc.ffn_out_drop = dropout_mask(T, H, cfg.dropout_rate, *rng);
      ffn_dropped = ffn_dropped.cwiseProduct(lc.ffn_out_drop);
    }
    lc.ffn_residual = lc.attn_normed + ffn_dropped;
    h = layer_norm(lc.ffn_residual, lp.ffn_gamma, lp.ffn_beta, lc.ffn_norm);
  }
  result.hidden = h;
  return result;
}

EncodedSequence encode(const Context& context, const ModelParams& params, bool train_mode) {
  std::mt19937_64 rng(params.config.seed);
  return encoder_forward(context, params, train_mode, &rng).hidden;
}

}  // namespace qbek
