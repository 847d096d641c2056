#pragma once

#include <stdexcept>
#include <string>

namespace zswlab {

/// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModulusMismatch : Error {
  explicit ModulusMismatch(const std::string& what) : Error(what) {}
};

struct NotOddPrime : Error {
  explicit NotOddPrime(const std::string& what) : Error(what) {}
};

struct NonUnitDilation : Error {
  explicit NonUnitDilation(const std::string& what) : Error(what) {}
};

struct EmptySequence : Error {
  explicit EmptySequence(const std::string& what) : Error(what) {}
};

struct LengthExceedsSequence : Error {
  explicit LengthExceedsSequence(const std::string& what) : Error(what) {}
};

/// The search ran out of its length cap without every sequence turning good.
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

struct NoSolution : Error {
  explicit NoSolution(const std::string& what) : Error(what) {}
};

struct PrimeTooSmall : Error {
  explicit PrimeTooSmall(const std::string& what) : Error(what) {}
};

struct PreconditionViolated : Error {
  explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

struct HypothesisUnmet : Error {
  explicit HypothesisUnmet(const std::string& what) : Error(what) {}
};

struct UnsupportedPrime : Error {
  explicit UnsupportedPrime(const std::string& what) : Error(what) {}
};

struct NotFound : Error {
  explicit NotFound(const std::string& what) : Error(what) {}
};

struct CheckpointCorrupt : Error {
  explicit CheckpointCorrupt(const std::string& what) : Error(what) {}
};

}  // namespace zswlab
