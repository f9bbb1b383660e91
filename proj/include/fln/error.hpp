#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fln {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `offset` is a byte offset into the parsed string.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), message_(what), offset_(offset) {}

  std::size_t offset() const { return offset_; }
  /// Description without the position suffix.
  const std::string& message() const { return message_; }

private:
  std::string message_;
  std::size_t offset_;
};

/// Symbol used with a different arity than its first use, or unknown hedge.
class SymbolError : public Error {
public:
  using Error::Error;
};

/// Value outside [0,1] or an otherwise invalid grade.
class RangeError : public Error {
public:
  using Error::Error;
};

class SubstitutionError : public Error {
public:
  using Error::Error;
};

class ProofError : public Error {
public:
  ProofError(std::size_t step, const std::string& reason)
      : Error("step " + std::to_string(step) + ": " + reason), step_(step), reason_(reason) {}

  std::size_t step() const { return step_; }
  const std::string& reason() const { return reason_; }

private:
  std::size_t step_;
  std::string reason_;
};

/// Inference rule applied to premises of the wrong shape.
class RuleError : public Error {
public:
  using Error::Error;
};

/// Structure enumeration would exceed the configured limit.
class SearchSpaceError : public Error {
public:
  using Error::Error;
};

class EvaluationError : public Error {
public:
  using Error::Error;
};

}  // namespace fln
