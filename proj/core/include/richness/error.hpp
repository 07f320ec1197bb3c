#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace richness {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric or table was requested over zero tokens.
class EmptyCorpusError : public Error {
 public:
  explicit EmptyCorpusError(const std::string& what_for = "corpus")
      : Error("empty " + what_for) {}
};

/// Input bytes are not valid UTF-8.
class DecodeError : public Error {
 public:
  explicit DecodeError(std::size_t byte_offset)
      : Error("invalid UTF-8 at byte offset " + std::to_string(byte_offset)),
        offset_(byte_offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A line of a structured input file could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A required column is missing from an annotated input.
class FormatError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A lemma-dependent operation received an unlemmatized corpus.
class AnnotationLevelError : public Error {
 public:
  using Error::Error;
};

/// A metric has no usable input (no usable distribution, no lemma meeting the
/// wordform threshold, ...).
class MetricError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument to an operation (bad threshold, bad band edges, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Report assembly or comparison failed.
class ReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace richness
