#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace qbek {

/// Maps a token to its canonical form for matching and scoring. All
/// implementations must be deterministic; batch calls preserve order.
class Normalizer {
 public:
  virtual ~Normalizer() = default;
  virtual std::string normalize(const std::string& token) const = 0;
  virtual std::vector<std::string> normalize_batch(const std::vector<std::string>& tokens) const;
  virtual std::string name() const = 0;
};

/// Porter-stems each token (English default).
class PorterNormalizer final : public Normalizer {
 public:
  std::string normalize(const std::string& token) const override;
  std::string name() const override { return "porter"; }
};

/// Leaves tokens unchanged (for languages without a shipped stemmer).
class IdentityNormalizer final : public Normalizer {
 public:
  std::string normalize(const std::string& token) const override { return token; }
  std::string name() const override { return "identity"; }
};

/// Adapter for external lemmatizers speaking a newline protocol: tokens on
/// stdin, one normalized form per line on stdout, strictly 1:1. The command
/// runs once per batch via the shell. Throws ExternalNormalizerFailure when
/// the command cannot be run, exits nonzero, or breaks the 1:1 contract.
class ExternalCommandNormalizer final : public Normalizer {
 public:
  explicit ExternalCommandNormalizer(std::string command) : command_(std::move(command)) {}
  std::string normalize(const std::string& token) const override;
  std::vector<std::string> normalize_batch(const std::vector<std::string>& tokens) const override;
  std::string name() const override { return "external:" + command_; }

 private:
  std::string command_;
};

/// Builds a normalizer from a config value: "porter", "identity", or
/// "external:<shell command>". Throws ConfigError on anything else.
std::unique_ptr<Normalizer> make_normalizer(const std::string& spec);

/// The raw token sequence normalize_keyphrase feeds to the normalizer:
/// lowercased, hyphens treated as separators, edge punctuation stripped,
/// punctuation-only tokens dropped. Exposed so span annotation can match
/// word windows with exactly the same tokenization.
std::vector<std::string> matching_tokens(std::string_view text);

/// Canonical matching key for a keyphrase: lowercase, hyphens to spaces,
/// whitespace runs collapsed, edge punctuation stripped per token, then each
/// token normalized. Tokens that are pure punctuation are dropped.
std::string normalize_keyphrase(std::string_view phrase, const Normalizer& normalizer);

}  // namespace qbek
