#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "qbek/errors.hpp"
#include "qbek/model_params.hpp"

using namespace qbek;

namespace {

EncoderConfig tiny_config() {
  EncoderConfig cfg;
  cfg.num_layers = 2;
  cfg.hidden_size = 8;
  cfg.num_heads = 2;
  cfg.ffn_size = 16;
  cfg.vocab_size = 20;
  cfg.max_positions = 16;
  cfg.seed = 11;
  return cfg;
}

template <class A, class B>
bool bitwise_equal(const A& a, const B& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace

TEST_CASE("config validation rejects impossible shapes") {
  EncoderConfig cfg = tiny_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.num_heads = 3;  // 8 % 3 != 0
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = tiny_config();
  cfg.vocab_size = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = tiny_config();
  cfg.dropout_rate = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.dropout_rate = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("initialization is reproducible and seed-dependent") {
  ModelParams a = ModelParams::init(tiny_config());
  ModelParams b = ModelParams::init(tiny_config());
  EncoderConfig other = tiny_config();
  other.seed = 12;
  ModelParams c = ModelParams::init(other);
  CHECK(bitwise_equal(a.token_embeddings, b.token_embeddings));
  CHECK(bitwise_equal(a.layers[1].w1, b.layers[1].w1));
  CHECK(bitwise_equal(a.w_end, b.w_end));
  CHECK_FALSE(bitwise_equal(a.token_embeddings, c.token_embeddings));
  CHECK(a.all_finite());
  // Layer norms start at identity, biases at zero.
  CHECK(bitwise_equal(a.embed_gamma, Vector::Ones(8)));
  CHECK(bitwise_equal(a.layers[0].ffn_beta, Vector::Zero(8)));
  CHECK(bitwise_equal(a.layers[0].bq, Vector::Zero(8)));
  CHECK(a.b_start == 0.0);
}

TEST_CASE("initialized weights are roughly at the configured scale") {
  EncoderConfig cfg = tiny_config();
  cfg.init_std = 0.02;
  ModelParams p = ModelParams::init(cfg);
  double mean = p.token_embeddings.mean();
  double var = (p.token_embeddings.array() - mean).square().mean();
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::sqrt(var) == doctest::Approx(0.02).epsilon(0.3));
}

TEST_CASE("parameter views cover every tensor exactly once and alias storage") {
  ModelParams p = ModelParams::zeros(tiny_config());
  std::vector<TensorView> views = p.parameter_views();
  // 5 embedding-side tensors, 16 per layer, 4 head tensors.
  CHECK(views.size() == 5 + 16 * 2 + 4);
  std::set<std::string> names;
  std::size_t total = 0;
  for (const TensorView& v : views) {
    CHECK(names.insert(v.name).second);
    CHECK(v.size() > 0);
    total += v.size();
  }
  std::size_t expected = 20 * 8 + 16 * 8 + 2 * 8 + 8 + 8;  // embeddings + norm
  expected += 2 * (4 * 64 + 4 * 8 + 2 * 8 + 8 * 16 + 16 + 16 * 8 + 8 + 2 * 8);
  expected += 8 + 8 + 1 + 1;  // head
  CHECK(total == expected);

  for (const TensorView& v : views)
    if (v.name == "head.b_start") *v.data = 3.5;
  CHECK(p.b_start == 3.5);
  views[0].data[0] = -1.25;
  CHECK(p.token_embeddings(0, 0) == -1.25);
}

TEST_CASE("shared bias removes the separate end-bias parameter") {
  EncoderConfig cfg = tiny_config();
  cfg.shared_bias = true;
  ModelParams p = ModelParams::zeros(cfg);
  for (const TensorView& v : p.parameter_views()) CHECK(v.name != "head.b_end");
  p.b_start = 0.7;
  CHECK(p.end_bias() == 0.7);
  cfg.shared_bias = false;
  ModelParams q = ModelParams::zeros(cfg);
  q.b_end = -0.3;
  CHECK(q.end_bias() == -0.3);
}

TEST_CASE("non-finite parameters are detected") {
  ModelParams p = ModelParams::zeros(tiny_config());
  CHECK(p.all_finite());
  p.layers[1].b2[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(p.all_finite());
}
