#include "qbek/span_head.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbek/errors.hpp"

namespace qbek {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double clamped(double p) {
  return std::min(1.0 - kProbabilityEpsilon, std::max(kProbabilityEpsilon, p));
}

}  // namespace

TokenProbabilities token_probabilities(const EncodedSequence& enc, const ModelParams& params,
                                       const Context& context) {
  if (static_cast<std::size_t>(enc.rows()) != context.size())
    throw ShapeMismatch("encoded rows " + std::to_string(enc.rows()) +
                        " do not match context length " + std::to_string(context.size()));
  if (enc.cols() != params.w_start.size())
    throw ShapeMismatch("hidden size " + std::to_string(enc.cols()) +
                        " does not match head weights of " +
                        std::to_string(params.w_start.size()));
  TokenProbabilities probs;
  const Index T = enc.rows();
  probs.v_start.resize(T);
  probs.v_end.resize(T);
  probs.valid_mask.resize(static_cast<std::size_t>(T));
  double be = params.end_bias();
  for (Index i = 0; i < T; ++i) {
    probs.v_start[i] = sigmoid(params.w_start.dot(enc.row(i)) + params.b_start);
    probs.v_end[i] = sigmoid(params.w_end.dot(enc.row(i)) + be);
    probs.valid_mask[static_cast<std::size_t>(i)] =
        context.kinds[static_cast<std::size_t>(i)] == TokenKind::text;
  }
  return probs;
}

double span_score(const TokenProbabilities& probs, std::size_t s, std::size_t e) {
  if (s > e)
    throw InvalidSpan("span start " + std::to_string(s) + " after end " + std::to_string(e));
  if (e >= probs.size())
    throw InvalidSpan("span end " + std::to_string(e) + " outside sequence of " +
                      std::to_string(probs.size()));
  if (!probs.valid_mask[s] || !probs.valid_mask[e])
    throw InvalidSpan("span touches a masked position");
  return probs.v_start[static_cast<Index>(s)] * probs.v_end[static_cast<Index>(e)];
}

double span_loss(const TokenProbabilities& probs, const Vector& g_start, const Vector& g_end) {
  const auto T = static_cast<Index>(probs.size());
  if (g_start.size() != T || g_end.size() != T)
    throw ShapeMismatch("target vectors do not match sequence length " + std::to_string(T));
  std::size_t valid = 0;
  double start_sum = 0.0, end_sum = 0.0;
  for (Index i = 0; i < T; ++i) {
    if (!probs.valid_mask[static_cast<std::size_t>(i)]) continue;
    ++valid;
    double vs = clamped(probs.v_start[i]);
    double ve = clamped(probs.v_end[i]);
    start_sum -= g_start[i] * std::log(vs) + (1.0 - g_start[i]) * std::log(1.0 - vs);
    end_sum -= g_end[i] * std::log(ve) + (1.0 - g_end[i]) * std::log(1.0 - ve);
  }
  if (valid == 0) throw NoValidPositions("loss undefined: every position is masked");
  return (start_sum + end_sum) / static_cast<double>(valid);
}

}  // namespace qbek
