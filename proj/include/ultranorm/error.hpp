#pragma once

#include <stdexcept>
#include <string>

namespace ultranorm {

enum class ErrorKind {
  InvalidArgument,
  DivisionByZero,
  WrongChain,
  WellOrderedChain,
  UnknownIndex,
  ZeroVector,
  NotOrthogonal,
  LinearlyDependent,
  NotDecreasing,
  CompletenessNotAssumed,
  InconsistentDescriptor,
  InsufficientEqualNormVectors,
  DimensionMismatch,
  Parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::WrongChain: return "WrongChain";
    case ErrorKind::WellOrderedChain: return "WellOrderedChain";
    case ErrorKind::UnknownIndex: return "UnknownIndex";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::LinearlyDependent: return "LinearlyDependent";
    case ErrorKind::NotDecreasing: return "NotDecreasing";
    case ErrorKind::CompletenessNotAssumed: return "CompletenessNotAssumed";
    case ErrorKind::InconsistentDescriptor: return "InconsistentDescriptor";
    case ErrorKind::InsufficientEqualNormVectors: return "InsufficientEqualNormVectors";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by algorithms that walk a list and can name the offending position.
class IndexedError : public Error {
 public:
  IndexedError(ErrorKind kind, std::size_t index, const std::string& what)
      : Error(kind, what + " (at index " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Parse, line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ultranorm
