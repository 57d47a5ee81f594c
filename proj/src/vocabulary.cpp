#include "qbek/vocabulary.hpp"

#include <fstream>

#include "qbek/errors.hpp"
#include "qbek/unicode.hpp"

namespace qbek {
namespace {

std::uint64_t fnv1a(const std::vector<std::string>& entries) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (const std::string& e : entries) {
    for (unsigned char c : e) mix(c);
    mix('\n');
  }
  return h;
}

}  // namespace

Vocabulary Vocabulary::load(const std::string& path, const SpecialTokens& specials) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptFile(path, "cannot open vocabulary file");
  std::vector<std::string> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw ParseError(line_no, "empty vocabulary entry");
    entries.push_back(line);
  }
  try {
    return from_entries(std::move(entries), specials);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), std::string(e.what()) + " in " + path);
  }
}

Vocabulary Vocabulary::from_entries(std::vector<std::string> entries,
                                    const SpecialTokens& specials) {
  Vocabulary v;
  v.entries_ = std::move(entries);
  v.index_.reserve(v.entries_.size());
  for (std::size_t i = 0; i < v.entries_.size(); ++i) {
    auto [it, inserted] = v.index_.emplace(v.entries_[i], static_cast<Index>(i));
    if (!inserted) throw ParseError(i + 1, "duplicate vocabulary entry '" + v.entries_[i] + "'");
    std::string_view piece = v.entries_[i];
    if (piece.substr(0, kContinuation.size()) == kContinuation)
      piece.remove_prefix(kContinuation.size());
    v.max_piece_cps_ = std::max(v.max_piece_cps_, codepoint_count(piece));
  }
  auto require = [&v](const std::string& name, const char* role) {
    auto it = v.index_.find(name);
    if (it == v.index_.end())
      throw ConfigError("vocabulary is missing the " + std::string(role) + " token '" + name + "'");
    return it->second;
  };
  v.cls_id_ = require(specials.cls, "CLS");
  v.sep_id_ = require(specials.sep, "SEP");
  v.pad_id_ = require(specials.pad, "PAD");
  v.unk_id_ = require(specials.unk, "UNK");
  v.mask_id_ = require(specials.mask, "MASK");
  v.hash_ = fnv1a(v.entries_);
  return v;
}

std::optional<Index> Vocabulary::find(const std::string& piece) const {
  auto it = index_.find(piece);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace qbek
