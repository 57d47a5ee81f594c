#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qbek/context.hpp"
#include "qbek/extractor.hpp"
#include "qbek/model_params.hpp"
#include "qbek/optimizer.hpp"

namespace qbek {

/// Everything a command reads: input/output paths plus the nested chunking,
/// encoder, training, and extraction configs. A single master seed fans out
/// to the encoder and trainer so one number reproduces a whole run.
///
/// Not exposed as keys: the encoder's vocab_size (always taken from the
/// vocabulary file), num_segments (fixed), the nested seeds (see
/// fan_out_seed), and the chunking mode (each command picks its own).
struct RunConfig {
  std::string dataset;
  std::string val_dataset;  // falls back to `dataset` when empty
  std::string vocab;
  std::string checkpoint;   // input checkpoint (extraction, resume)
  std::string predictions;  // input predictions (evaluation)
  std::string out;

  ChunkingConfig chunking;
  EncoderConfig encoder;
  TrainingConfig training;
  ExtractionConfig extraction;
  std::string normalizer = "porter";
  std::uint64_t seed = 0;

  std::vector<std::size_t> sweep_windows = {1, 2, 3, 5, 8};
  std::vector<std::uint64_t> sweep_seeds = {0};

  /// Copies `seed` into encoder.seed and training.seed.
  void fan_out_seed();

  /// Value checks that need no loaded inputs (positive window and k, a
  /// well-formed training config, non-empty sweep lists). The encoder
  /// config is validated later, once the vocabulary size is known.
  /// Throws ConfigError.
  void validate() const;
};

/// Applies one key=value setting. Throws ConfigError naming the key when it
/// is unknown and quoting the value when it does not parse.
void apply_config_value(RunConfig& cfg, const std::string& key,
                        const std::string& value);

/// Reads a flat key=value file: one setting per line, '#' starts a comment,
/// blank lines are skipped. Settings apply in order, so later lines win.
void load_config_file(RunConfig& cfg, const std::string& path);
void load_config_file(RunConfig& cfg, std::istream& in, const std::string& label);

/// The full configuration as sorted key=value lines, itself a valid config
/// file. Commands write it next to their outputs so every artifact records
/// what produced it.
std::string effective_config(const RunConfig& cfg);
void write_effective_config(const RunConfig& cfg, const std::string& path);

}  // namespace qbek
