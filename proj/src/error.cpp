#include "perdecomp/error.hpp"

#include <utility>

namespace perdecomp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonIntegerEntry: return "NonIntegerEntry";
    case ErrorKind::NonBijective: return "NonBijective";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::EmptyBlock: return "EmptyBlock";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotTPeriodic: return "NotTPeriodic";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InternalInvariantFailure: return "InternalInvariantFailure";
    case ErrorKind::NonIntegerInput: return "NonIntegerInput";
    case ErrorKind::PlanMismatch: return "PlanMismatch";
    case ErrorKind::NotUnityCombination: return "NotUnityCombination";
    case ErrorKind::BadModulus: return "BadModulus";
    case ErrorKind::ZeroPeriod: return "ZeroPeriod";
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

NonBijectiveError::NonBijectiveError(std::size_t generator, std::uint32_t point)
    : Error(ErrorKind::NonBijective,
            "generator " + std::to_string(generator + 1) + " hits point " +
                std::to_string(point) + " twice or out of range"),
      generator(generator),
      point(point) {}

NonCommutingError::NonCommutingError(std::size_t first, std::size_t second, std::uint32_t point)
    : Error(ErrorKind::NonCommuting,
            "generators " + std::to_string(first + 1) + " and " + std::to_string(second + 1) +
                " do not commute at point " + std::to_string(point)),
      first(first),
      second(second),
      point(point) {}

CapExceededError::CapExceededError(const std::string& what, std::size_t requested, std::size_t cap)
    : Error(ErrorKind::CapExceeded,
            what + ": " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
      requested(requested),
      cap(cap) {}

NotTPeriodicError::NotTPeriodicError(std::uint32_t witness)
    : Error(ErrorKind::NotTPeriodic,
            "right-hand side is not invariant at point " + std::to_string(witness)),
      witness(witness) {}

PreconditionViolatedError::PreconditionViolatedError(std::vector<std::uint32_t> cycle,
                                                     std::string sum)
    : Error(ErrorKind::PreconditionViolated,
            "quotient cycle through point " +
                (cycle.empty() ? std::string("?") : std::to_string(cycle.front())) +
                " has nonzero sum " + sum),
      cycle(std::move(cycle)),
      sum(std::move(sum)) {}

ParseError::ParseError(std::string path, std::string reason)
    : Error(ErrorKind::ParseError, path + ": " + reason),
      path(std::move(path)),
      reason(std::move(reason)) {}

SchemaError::SchemaError(std::string field, std::string reason)
    : Error(ErrorKind::SchemaError, field + ": " + reason),
      field(std::move(field)),
      reason(std::move(reason)) {}

}  // namespace perdecomp
