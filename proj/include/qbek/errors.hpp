#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qbek {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(const std::string& id)
      : Error("duplicate document id: " + id) {}
};

class ExternalNormalizerFailure : public Error {
 public:
  using Error::Error;
  ExternalNormalizerFailure(const std::string& command, const std::string& reason)
      : Error("external normalizer '" + command + "' failed: " + reason) {}
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidSpan : public Error {
 public:
  using Error::Error;
};

class NoValidPositions : public Error {
 public:
  using Error::Error;
};

class NonFiniteGradient : public Error {
 public:
  using Error::Error;
};

class FormatVersionMismatch : public Error {
 public:
  using Error::Error;
};

class VocabHashMismatch : public Error {
 public:
  using Error::Error;
};

class CorruptFile : public Error {
 public:
  using Error::Error;
  CorruptFile(const std::string& path, const std::string& reason)
      : Error(path + ": " + reason) {}
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

class MissingGold : public Error {
 public:
  explicit MissingGold(const std::string& doc_id)
      : Error("no gold entry for document: " + doc_id) {}
};

/// Configuration and usage problems; the CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbek
