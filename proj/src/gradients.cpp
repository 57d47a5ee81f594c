#include "qbek/gradients.hpp"

#include <cmath>
#include <string>

#include "qbek/errors.hpp"

namespace qbek {
namespace {

// Backward of y = gamma * x_hat + beta over rows, accumulating into the
// parameter gradients and returning dx.
Matrix layer_norm_backward(const Matrix& d_out, const LayerNormCache& cache,
                           const Vector& gamma, Vector& d_gamma, Vector& d_beta) {
  const Index rows = d_out.rows(), cols = d_out.cols();
  Matrix dx(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    d_gamma += d_out.row(r).cwiseProduct(cache.normalized.row(r)).transpose();
    d_beta += d_out.row(r).transpose();
    Vector d_hat = d_out.row(r).cwiseProduct(gamma.transpose()).transpose();
    double mean_d = d_hat.mean();
    double mean_dx = d_hat.cwiseProduct(cache.normalized.row(r).transpose()).mean();
    dx.row(r) = (cache.inv_std[r] *
                 (d_hat.transpose().array() - mean_d -
                  cache.normalized.row(r).array() * mean_dx))
                    .matrix();
  }
  return dx;
}

// Backward of y = x W + b.
Matrix linear_backward(const Matrix& d_out, const Matrix& x, const Matrix& w, Matrix& d_w,
                       Vector& d_b) {
  d_w += x.transpose() * d_out;
  d_b += d_out.colwise().sum().transpose();
  return d_out * w.transpose();
}

}  // namespace

GradientResult compute_gradients(const Context& context, const ModelParams& params,
                                 bool train_mode, std::mt19937_64* rng, double loss_scale) {
  const EncoderConfig& cfg = params.config;
  const auto T = static_cast<Index>(context.size());
  if (context.g_start.size() != T || context.g_end.size() != T)
    throw ShapeMismatch("context lacks gold target vectors of length " + std::to_string(T));

  ForwardResult fwd = encoder_forward(context, params, train_mode, rng);
  TokenProbabilities probs = token_probabilities(fwd.hidden, params, context);
  double loss = span_loss(probs, context.g_start, context.g_end);

  GradientResult result;
  result.loss = loss * loss_scale;
  result.grads = ModelParams::zeros(cfg);
  ModelParams& g = result.grads;

  std::size_t valid = 0;
  for (bool v : probs.valid_mask) valid += v ? 1 : 0;
  const double inv_n = loss_scale / static_cast<double>(valid);

  // Head backward: d(loss)/d(logit) = (v - g)/N on valid in-range positions.
  // The epsilon clamp zeroes the gradient where it binds.
  Vector d_logit_start = Vector::Zero(T), d_logit_end = Vector::Zero(T);
  for (Index i = 0; i < T; ++i) {
    if (!probs.valid_mask[static_cast<std::size_t>(i)]) continue;
    double vs = probs.v_start[i], ve = probs.v_end[i];
    if (vs > kProbabilityEpsilon && vs < 1.0 - kProbabilityEpsilon)
      d_logit_start[i] = (vs - context.g_start[i]) * inv_n;
    if (ve > kProbabilityEpsilon && ve < 1.0 - kProbabilityEpsilon)
      d_logit_end[i] = (ve - context.g_end[i]) * inv_n;
  }
  g.w_start = fwd.hidden.transpose() * d_logit_start;
  g.w_end = fwd.hidden.transpose() * d_logit_end;
  g.b_start = d_logit_start.sum();
  if (cfg.shared_bias)
    g.b_start += d_logit_end.sum();
  else
    g.b_end = d_logit_end.sum();
  Matrix d_h = d_logit_start * params.w_start.transpose() +
               d_logit_end * params.w_end.transpose();

  const auto heads = static_cast<Index>(cfg.num_heads);
  const Index dh = static_cast<Index>(cfg.hidden_size) / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const bool drop = fwd.cache.train_mode;

  for (std::size_t layer = cfg.num_layers; layer-- > 0;) {
    const LayerParams& lp = params.layers[layer];
    LayerParams& lg = g.layers[layer];
    const LayerCache& lc = fwd.cache.layers[layer];

    Matrix d_res = layer_norm_backward(d_h, lc.ffn_norm, lp.ffn_gamma, lg.ffn_gamma,
                                       lg.ffn_beta);
    Matrix d_normed = d_res;  // residual branch into the feed-forward input
    Matrix d_ffn_out = drop ? d_res.cwiseProduct(lc.ffn_out_drop) : d_res;
    Matrix d_act = linear_backward(d_ffn_out, lc.ffn_act, lp.w2, lg.w2, lg.b2);
    Matrix d_pre = d_act.cwiseProduct(
        lc.ffn_pre.unaryExpr([](double x) { return gelu_derivative(x); }));
    d_normed += linear_backward(d_pre, lc.attn_normed, lp.w1, lg.w1, lg.b1);

    Matrix d_attn_res = layer_norm_backward(d_normed, lc.attn_norm, lp.attn_gamma,
                                            lg.attn_gamma, lg.attn_beta);
    Matrix d_input = d_attn_res;  // residual branch into the layer input
    Matrix d_attn_out = drop ? d_attn_res.cwiseProduct(lc.attn_out_drop) : d_attn_res;
    Matrix d_concat = linear_backward(d_attn_out, lc.attn_concat, lp.wo, lg.wo, lg.bo);

    Matrix d_q = Matrix::Zero(T, lc.q.cols()), d_k = Matrix::Zero(T, lc.q.cols()),
           d_v = Matrix::Zero(T, lc.q.cols());
    for (Index head = 0; head < heads; ++head) {
      auto qh = lc.q.middleCols(head * dh, dh);
      auto kh = lc.k.middleCols(head * dh, dh);
      auto vh = lc.v.middleCols(head * dh, dh);
      const Matrix& probs_h = lc.attn_probs[static_cast<std::size_t>(head)];
      Matrix attended = probs_h;
      if (drop) attended = attended.cwiseProduct(lc.attn_drop[static_cast<std::size_t>(head)]);
      Matrix d_ch = d_concat.middleCols(head * dh, dh);
      Matrix d_attended = d_ch * vh.transpose();
      d_v.middleCols(head * dh, dh) = attended.transpose() * d_ch;
      if (drop) d_attended = d_attended.cwiseProduct(lc.attn_drop[static_cast<std::size_t>(head)]);
      // Softmax backward per row; masked columns have prob 0, giving 0.
      Matrix d_scores(T, T);
      for (Index r = 0; r < T; ++r) {
        double dot = d_attended.row(r).cwiseProduct(probs_h.row(r)).sum();
        d_scores.row(r) =
            (probs_h.row(r).array() * (d_attended.row(r).array() - dot)).matrix();
      }
      d_q.middleCols(head * dh, dh) = d_scores * kh * scale;
      d_k.middleCols(head * dh, dh) = d_scores.transpose() * qh * scale;
    }
    d_input += linear_backward(d_q, lc.input, lp.wq, lg.wq, lg.bq);
    d_input += linear_backward(d_k, lc.input, lp.wk, lg.wk, lg.bk);
    d_input += linear_backward(d_v, lc.input, lp.wv, lg.wv, lg.bv);
    d_h = d_input;
  }

  if (drop) d_h = d_h.cwiseProduct(fwd.cache.embed_drop);
  Matrix d_embed = layer_norm_backward(d_h, fwd.cache.embed_norm, params.embed_gamma,
                                       g.embed_gamma, g.embed_beta);
  for (Index t = 0; t < T; ++t) {
    g.token_embeddings.row(context.ids[static_cast<std::size_t>(t)]) += d_embed.row(t);
    g.position_embeddings.row(t) += d_embed.row(t);
    g.segment_embeddings.row(context.segment_ids[static_cast<std::size_t>(t)]) +=
        d_embed.row(t);
  }
  return result;
}

void add_scaled(ModelParams& into, ModelParams& grads, double factor) {
  std::vector<TensorView> a = into.parameter_views();
  std::vector<TensorView> b = grads.parameter_views();
  if (a.size() != b.size()) throw ShapeMismatch("parameter sets differ in tensor count");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows != b[i].rows || a[i].cols != b[i].cols)
      throw ShapeMismatch("tensor " + a[i].name + " differs in shape");
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i].data[j] += factor * b[i].data[j];
  }
}

}  // namespace qbek
