#pragma once

#include <stdexcept>
#include <string>

namespace causaltrust {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violated a documented domain (shape <= 0, mismatched grids, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text: corpus lines, lexicon or graph documents.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An adverb that the lexicon does not know. Carries the offending token.
class UnknownAdverbError : public Error {
 public:
  explicit UnknownAdverbError(std::string token)
      : Error("unknown adverb '" + token + "'"), token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A source had no causal assertion that could be scored.
class NoScorableCausalsError : public Error {
 public:
  using Error::Error;
};

}  // namespace causaltrust
