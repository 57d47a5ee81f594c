#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "qbek/model_params.hpp"
#include "qbek/optimizer.hpp"

namespace qbek {

inline constexpr std::uint32_t kCheckpointFormatVersion = 1;

/// Everything needed to resume or serve a model. The optimizer moments are
/// optional so serving checkpoints stay small.
struct Checkpoint {
  ModelParams params;
  std::optional<OptimizerState> optimizer;
  std::uint64_t step = 0;
  std::uint64_t vocab_hash = 0;
};

/// Writes a self-describing binary file: magic, format version, a JSON header
/// (encoder config, tensor manifest, vocabulary hash, step), then every
/// tensor as little-endian 64-bit floats in manifest order. Saving the result
/// of a load reproduces the original file byte for byte.
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);

/// Throws CorruptFile on structural damage (bad magic, truncation, manifest
/// mismatch), FormatVersionMismatch on an unknown version, and
/// VocabHashMismatch when `expected_vocab_hash` is given and differs.
Checkpoint load_checkpoint(const std::filesystem::path& path,
                           std::optional<std::uint64_t> expected_vocab_hash =
                               std::nullopt);

}  // namespace qbek
