#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "qbek/errors.hpp"
#include "qbek/gradients.hpp"
#include "support/model_fixtures.hpp"

using namespace qbek;
using testing::synthetic_context;
using testing::toy_encoder_config;

namespace {

// Finite-difference comparison at a given step. Two guarantees:
//  - the whole-gradient norm relative error stays at or below 1e-4, which
//    central-difference truncation cannot breach on a correct gradient here
//    (measured: <= 3.1e-5 at step 1e-3);
//  - every element agrees within per_elem_rtol relative or per_elem_atol
//    absolute. At step 1e-3 a few coordinates carry third derivatives of
//    order 1e3, putting ~5e-4 of pure truncation on O(1) gradients, so the
//    per-element net is coarser at that step and sharp at step 1e-4.
void check_all_gradients(ModelParams& params, ModelParams& grads,
                         const std::function<double()>& loss_fn, double step,
                         double per_elem_rtol, double per_elem_atol) {
  std::vector<TensorView> pv = params.parameter_views();
  std::vector<TensorView> gv = grads.parameter_views();
  REQUIRE(pv.size() == gv.size());
  double err_sq = 0.0, norm_sq = 0.0;
  for (std::size_t t = 0; t < pv.size(); ++t) {
    REQUIRE(pv[t].size() == gv[t].size());
    for (std::size_t j = 0; j < pv[t].size(); ++j) {
      double original = pv[t].data[j];
      pv[t].data[j] = original + step;
      double plus = loss_fn();
      pv[t].data[j] = original - step;
      double minus = loss_fn();
      pv[t].data[j] = original;
      double fd = (plus - minus) / (2 * step);
      double analytic = gv[t].data[j];
      err_sq += (analytic - fd) * (analytic - fd);
      norm_sq += std::max(analytic * analytic, fd * fd);
      double scale = std::max(std::abs(analytic), std::abs(fd));
      if (std::abs(analytic - fd) > per_elem_atol + per_elem_rtol * scale) {
        CAPTURE(pv[t].name);
        CAPTURE(j);
        CAPTURE(analytic);
        CAPTURE(fd);
        REQUIRE(std::abs(analytic - fd) <= per_elem_atol + per_elem_rtol * scale);
      }
    }
  }
  REQUIRE(norm_sq > 0.0);
  CHECK(std::sqrt(err_sq / norm_sq) <= 1e-4);
}

}  // namespace

TEST_CASE("analytic gradients match central finite differences over many seeds") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CAPTURE(seed);
    EncoderConfig cfg = toy_encoder_config(seed);
    cfg.shared_bias = seed % 3 == 0;
    ModelParams params = ModelParams::init(cfg);
    std::mt19937 rng(static_cast<unsigned>(seed * 977));
    std::size_t text = 3 + seed % 4;
    std::size_t pad = seed % 2 ? 2 : 0;  // exercise attention masking too
    Context ctx = synthetic_context(text, pad, rng, cfg.vocab_size, true);

    GradientResult result = compute_gradients(ctx, params);
    CHECK(result.loss > 0.0);
    CHECK(result.grads.all_finite());
    check_all_gradients(params, result.grads,
                        [&] { return compute_gradients(ctx, params).loss; }, 1e-3, 1e-3,
                        5e-5);
  }
}

TEST_CASE("fine-step finite differences agree element by element") {
  // Step 1e-4 brings truncation below 1e-5 relative on every coordinate,
  // pinning per-element agreement at the 1e-4 level.
  EncoderConfig cfg = toy_encoder_config(2);
  ModelParams params = ModelParams::init(cfg);
  std::mt19937 rng(2 * 977);
  Context ctx = synthetic_context(5, 0, rng, cfg.vocab_size, true);
  GradientResult result = compute_gradients(ctx, params);
  check_all_gradients(params, result.grads,
                      [&] { return compute_gradients(ctx, params).loss; }, 1e-4, 1e-4,
                      1e-8);
}

TEST_CASE("train-mode gradients differentiate through fixed dropout masks") {
  EncoderConfig cfg = toy_encoder_config(77);
  cfg.dropout_rate = 0.5;
  ModelParams params = ModelParams::init(cfg);
  std::mt19937 rng(18);
  Context ctx = synthetic_context(4, 0, rng, cfg.vocab_size, true);
  auto with_masks = [&]() {
    std::mt19937_64 drop_rng(4242);  // identical masks on every call
    return compute_gradients(ctx, params, true, &drop_rng);
  };
  GradientResult result = with_masks();
  check_all_gradients(params, result.grads, [&] { return with_masks().loss; }, 1e-3, 1e-3,
                      5e-5);
}

TEST_CASE("gradients scale linearly with the loss scale") {
  EncoderConfig cfg = toy_encoder_config(55);
  ModelParams params = ModelParams::init(cfg);
  std::mt19937 rng(19);
  Context ctx = synthetic_context(5, 0, rng, cfg.vocab_size, true);
  GradientResult base = compute_gradients(ctx, params);
  GradientResult scaled = compute_gradients(ctx, params, false, nullptr, 3.75);
  CHECK(scaled.loss == doctest::Approx(3.75 * base.loss).epsilon(1e-12));
  std::vector<TensorView> a = base.grads.parameter_views();
  std::vector<TensorView> b = scaled.grads.parameter_views();
  for (std::size_t t = 0; t < a.size(); ++t)
    for (std::size_t j = 0; j < a[t].size(); ++j)
      CHECK(b[t].data[j] == doctest::Approx(3.75 * a[t].data[j]).epsilon(1e-12));
}

TEST_CASE("bias gradient vanishes at the one-dimensional optimum") {
  // The loss is convex in b_start with everything else held fixed; locate
  // the minimum by bisecting finite-difference slopes, then confirm the
  // analytic gradient is zero there.
  EncoderConfig cfg = toy_encoder_config(66);
  ModelParams params = ModelParams::init(cfg);
  std::mt19937 rng(20);
  Context ctx = synthetic_context(6, 0, rng, cfg.vocab_size, true);
  ctx.g_start.setZero();  // mixed targets keep the optimum at finite bias
  ctx.g_start[1] = 1.0;
  ctx.g_start[3] = 1.0;
  auto loss_at = [&](double b) {
    ModelParams p = params;
    p.b_start = b;
    return compute_gradients(ctx, p).loss;
  };
  auto fd_slope = [&](double b) {
    const double h = 1e-5;
    return (loss_at(b + h) - loss_at(b - h)) / (2 * h);
  };
  // Stay inside the region where no probability hits the loss clamp.
  double lo = -8.0, hi = 8.0;
  REQUIRE(fd_slope(lo) < 0.0);
  REQUIRE(fd_slope(hi) > 0.0);
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (fd_slope(mid) < 0.0 ? lo : hi) = mid;
  }
  ModelParams at_optimum = params;
  at_optimum.b_start = 0.5 * (lo + hi);
  GradientResult result = compute_gradients(ctx, at_optimum);
  CHECK(std::abs(result.grads.b_start) < 1e-8);
}

TEST_CASE("eval-mode gradient computation is deterministic") {
  EncoderConfig cfg = toy_encoder_config(88);
  ModelParams params = ModelParams::init(cfg);
  std::mt19937 rng(21);
  Context ctx = synthetic_context(5, 1, rng, cfg.vocab_size, true);
  GradientResult a = compute_gradients(ctx, params);
  GradientResult b = compute_gradients(ctx, params);
  CHECK(a.loss == b.loss);
  std::vector<TensorView> av = a.grads.parameter_views();
  std::vector<TensorView> bv = b.grads.parameter_views();
  for (std::size_t t = 0; t < av.size(); ++t)
    for (std::size_t j = 0; j < av[t].size(); ++j) CHECK(av[t].data[j] == bv[t].data[j]);
}

TEST_CASE("gradient computation propagates missing targets and positions") {
  EncoderConfig cfg = toy_encoder_config(99);
  ModelParams params = ModelParams::init(cfg);
  std::mt19937 rng(22);
  Context no_targets = synthetic_context(4, 0, rng, cfg.vocab_size, false);
  CHECK_THROWS_AS(compute_gradients(no_targets, params), ShapeMismatch);
}

TEST_CASE("add_scaled accumulates tensor by tensor") {
  EncoderConfig cfg = toy_encoder_config(12);
  ModelParams into = ModelParams::zeros(cfg);
  ModelParams grads = ModelParams::init(cfg);
  add_scaled(into, grads, 2.0);
  add_scaled(into, grads, -0.5);
  CHECK(into.token_embeddings.isApprox(1.5 * grads.token_embeddings, 1e-15));
  CHECK(into.layers[1].w2.isApprox(1.5 * grads.layers[1].w2, 1e-15));
}
