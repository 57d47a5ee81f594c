#pragma once

#include <cstddef>
#include <vector>

#include "qbek/context.hpp"
#include "qbek/encoder.hpp"
#include "qbek/model_params.hpp"
#include "qbek/types.hpp"

namespace qbek {

/// Per-token start/end probabilities. Every position carries a value, but
/// only positions with valid_mask set (text segment, non-PAD) take part in
/// the loss and in decoding.
struct TokenProbabilities {
  Vector v_start;
  Vector v_end;
  std::vector<bool> valid_mask;

  std::size_t size() const { return valid_mask.size(); }
};

/// Probability clamp applied before logarithms in the loss.
inline constexpr double kProbabilityEpsilon = 1e-7;

/// v_start[i] = sigmoid(w_start . enc[i] + b_start), likewise for the end
/// head (with b_start reused when the config shares the bias).
TokenProbabilities token_probabilities(const EncodedSequence& enc, const ModelParams& params,
                                       const Context& context);

/// Independence-factorized span score v_start[s] * v_end[e]. Throws
/// InvalidSpan when s > e or either position is masked out.
double span_score(const TokenProbabilities& probs, std::size_t s, std::size_t e);

/// Mean binary cross-entropy of the start head against g_start over valid
/// positions, plus the same for the end head; probabilities are clamped to
/// [epsilon, 1-epsilon] first. Throws NoValidPositions when nothing is
/// valid and ShapeMismatch when the vectors disagree in length.
double span_loss(const TokenProbabilities& probs, const Vector& g_start, const Vector& g_end);

}  // namespace qbek
