#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qbek/types.hpp"

namespace qbek {

/// Names of the reserved entries a vocabulary must contain.
struct SpecialTokens {
  std::string cls = "[CLS]";
  std::string sep = "[SEP]";
  std::string pad = "[PAD]";
  std::string unk = "[UNK]";
  std::string mask = "[MASK]";
};

/// Immutable subword vocabulary. Ids are assigned by position (file line
/// number). Word-internal pieces carry the "##" continuation prefix.
class Vocabulary {
 public:
  static constexpr std::string_view kContinuation = "##";

  /// Loads a UTF-8 file with one entry per line. Throws ParseError on
  /// duplicate entries and ConfigError when a special token is missing.
  static Vocabulary load(const std::string& path, const SpecialTokens& specials = {});
  static Vocabulary from_entries(std::vector<std::string> entries,
                                 const SpecialTokens& specials = {});

  Index size() const { return static_cast<Index>(entries_.size()); }
  const std::string& entry(Index id) const { return entries_.at(static_cast<std::size_t>(id)); }
  std::optional<Index> find(const std::string& piece) const;

  Index cls_id() const { return cls_id_; }
  Index sep_id() const { return sep_id_; }
  Index pad_id() const { return pad_id_; }
  Index unk_id() const { return unk_id_; }
  Index mask_id() const { return mask_id_; }

  /// FNV-1a over all entries; checkpoints store it to detect mismatched
  /// vocabularies at load time.
  std::uint64_t content_hash() const { return hash_; }

  /// Longest entry length in codepoints (continuation prefix excluded);
  /// bounds the greedy matcher's lookahead.
  std::size_t max_piece_codepoints() const { return max_piece_cps_; }

 private:
  Vocabulary() = default;

  std::vector<std::string> entries_;
  std::unordered_map<std::string, Index> index_;
  Index cls_id_ = -1, sep_id_ = -1, pad_id_ = -1, unk_id_ = -1, mask_id_ = -1;
  std::uint64_t hash_ = 0;
  std::size_t max_piece_cps_ = 0;
};

}  // namespace qbek
