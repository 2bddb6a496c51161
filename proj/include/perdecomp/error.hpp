#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace perdecomp {

enum class ErrorKind {
  EmptyInput,
  ZeroElement,
  NonPositive,
  ShapeMismatch,
  NonIntegerEntry,
  NonBijective,
  NonCommuting,
  EmptySubset,
  EmptyBlock,
  CapExceeded,
  NotTPeriodic,
  PreconditionViolated,
  InternalInvariantFailure,
  NonIntegerInput,
  PlanMismatch,
  NotUnityCombination,
  BadModulus,
  ZeroPeriod,
  NotParallel,
  ParseError,
  SchemaError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error thrown by the library. `kind()` is stable and is what
/// callers (and the CLI exit-code mapping) should switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NonBijectiveError : public Error {
 public:
  NonBijectiveError(std::size_t generator, std::uint32_t point);
  std::size_t generator;
  std::uint32_t point;  ///< an image hit twice (or out of range)
};

class NonCommutingError : public Error {
 public:
  NonCommutingError(std::size_t first, std::size_t second, std::uint32_t point);
  std::size_t first;
  std::size_t second;
  std::uint32_t point;  ///< x with T_first(T_second(x)) != T_second(T_first(x))
};

class CapExceededError : public Error {
 public:
  CapExceededError(const std::string& what, std::size_t requested, std::size_t cap);
  std::size_t requested;
  std::size_t cap;
};

class NotTPeriodicError : public Error {
 public:
  explicit NotTPeriodicError(std::uint32_t witness);
  std::uint32_t witness;
};

class PreconditionViolatedError : public Error {
 public:
  explicit PreconditionViolatedError(std::vector<std::uint32_t> cycle, std::string sum);
  /// Points (one per quotient class, in cycle order) whose induced values
  /// do not sum to zero.
  std::vector<std::uint32_t> cycle;
  std::string sum;
};

class ParseError : public Error {
 public:
  ParseError(std::string path, std::string reason);
  std::string path;
  std::string reason;
};

class SchemaError : public Error {
 public:
  SchemaError(std::string field, std::string reason);
  std::string field;
  std::string reason;
};

}  // namespace perdecomp
