#include "qbek/model_params.hpp"

#include <cmath>
#include <random>

#include "qbek/errors.hpp"

namespace qbek {

void EncoderConfig::validate() const {
  if (num_layers == 0 || hidden_size == 0 || num_heads == 0 || ffn_size == 0 ||
      vocab_size == 0 || max_positions == 0 || num_segments == 0)
    throw ConfigError("encoder sizes must all be positive");
  if (hidden_size % num_heads != 0)
    throw ConfigError("hidden_size " + std::to_string(hidden_size) +
                      " is not divisible by num_heads " + std::to_string(num_heads));
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
    throw ConfigError("dropout_rate must lie in [0, 1)");
}

namespace {

// Gaussian sampler pinned to a fixed algorithm (Box-Muller over mt19937_64
// words) so initialization is identical on every platform; the standard
// library's normal_distribution is implementation-defined.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double operator()(double stddev) {
    if (have_spare_) {
      have_spare_ = false;
      return spare_ * stddev;
    }
    double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;  // (0, 1]
    double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;          // [0, 1)
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2) * stddev;
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

ModelParams make_shaped(const EncoderConfig& config) {
  config.validate();
  auto h = static_cast<Index>(config.hidden_size);
  auto f = static_cast<Index>(config.ffn_size);
  ModelParams p;
  p.config = config;
  p.token_embeddings = Matrix::Zero(static_cast<Index>(config.vocab_size), h);
  p.position_embeddings = Matrix::Zero(static_cast<Index>(config.max_positions), h);
  p.segment_embeddings = Matrix::Zero(static_cast<Index>(config.num_segments), h);
  p.embed_gamma = Vector::Zero(h);
  p.embed_beta = Vector::Zero(h);
  p.layers.resize(config.num_layers);
  for (LayerParams& l : p.layers) {
    l.wq = l.wk = l.wv = l.wo = Matrix::Zero(h, h);
    l.bq = l.bk = l.bv = l.bo = Vector::Zero(h);
    l.attn_gamma = l.attn_beta = Vector::Zero(h);
    l.w1 = Matrix::Zero(h, f);
    l.b1 = Vector::Zero(f);
    l.w2 = Matrix::Zero(f, h);
    l.b2 = Vector::Zero(h);
    l.ffn_gamma = l.ffn_beta = Vector::Zero(h);
  }
  p.w_start = Vector::Zero(h);
  p.w_end = Vector::Zero(h);
  return p;
}

}  // namespace

ModelParams ModelParams::zeros(const EncoderConfig& config) { return make_shaped(config); }

ModelParams ModelParams::init(const EncoderConfig& config) {
  ModelParams p = make_shaped(config);
  GaussianSource gauss(config.seed);
  auto fill = [&gauss, &config](Matrix& m) {
    for (Index c = 0; c < m.cols(); ++c)
      for (Index r = 0; r < m.rows(); ++r) m(r, c) = gauss(config.init_std);
  };
  fill(p.token_embeddings);
  fill(p.position_embeddings);
  fill(p.segment_embeddings);
  p.embed_gamma.setOnes();
  for (LayerParams& l : p.layers) {
    fill(l.wq);
    fill(l.wk);
    fill(l.wv);
    fill(l.wo);
    l.attn_gamma.setOnes();
    fill(l.w1);
    fill(l.w2);
    l.ffn_gamma.setOnes();
  }
  for (Index i = 0; i < p.w_start.size(); ++i) p.w_start[i] = gauss(config.init_std);
  for (Index i = 0; i < p.w_end.size(); ++i) p.w_end[i] = gauss(config.init_std);
  return p;
}

std::vector<TensorView> ModelParams::parameter_views() {
  std::vector<TensorView> views;
  auto add_matrix = [&views](const std::string& name, Matrix& m) {
    views.push_back({name, m.data(), static_cast<std::size_t>(m.rows()),
                     static_cast<std::size_t>(m.cols())});
  };
  auto add_vector = [&views](const std::string& name, Vector& v) {
    views.push_back({name, v.data(), static_cast<std::size_t>(v.size()), 1});
  };
  auto add_scalar = [&views](const std::string& name, double& s) {
    views.push_back({name, &s, 1, 1});
  };
  add_matrix("embeddings.token", token_embeddings);
  add_matrix("embeddings.position", position_embeddings);
  add_matrix("embeddings.segment", segment_embeddings);
  add_vector("embeddings.norm.gamma", embed_gamma);
  add_vector("embeddings.norm.beta", embed_beta);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    std::string prefix = "layer" + std::to_string(i) + ".";
    LayerParams& l = layers[i];
    add_matrix(prefix + "attn.wq", l.wq);
    add_vector(prefix + "attn.bq", l.bq);
    add_matrix(prefix + "attn.wk", l.wk);
    add_vector(prefix + "attn.bk", l.bk);
    add_matrix(prefix + "attn.wv", l.wv);
    add_vector(prefix + "attn.bv", l.bv);
    add_matrix(prefix + "attn.wo", l.wo);
    add_vector(prefix + "attn.bo", l.bo);
    add_vector(prefix + "attn.norm.gamma", l.attn_gamma);
    add_vector(prefix + "attn.norm.beta", l.attn_beta);
    add_matrix(prefix + "ffn.w1", l.w1);
    add_vector(prefix + "ffn.b1", l.b1);
    add_matrix(prefix + "ffn.w2", l.w2);
    add_vector(prefix + "ffn.b2", l.b2);
    add_vector(prefix + "ffn.norm.gamma", l.ffn_gamma);
    add_vector(prefix + "ffn.norm.beta", l.ffn_beta);
  }
  add_vector("head.w_start", w_start);
  add_vector("head.w_end", w_end);
  add_scalar("head.b_start", b_start);
  if (!config.shared_bias) add_scalar("head.b_end", b_end);
  return views;
}

bool ModelParams::all_finite() const {
  auto& self = const_cast<ModelParams&>(*this);  // views are read here only
  for (const TensorView& t : self.parameter_views())
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!std::isfinite(t.data[i])) return false;
  return true;
}

}  // namespace qbek
