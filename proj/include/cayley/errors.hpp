#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unsupported group family or a parameter beyond the dense budget.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// A complete irrep table was required but only a partial one exists.
class PartialTableError : public Error {
 public:
  using Error::Error;
};

/// Mismatched dimensions, groups, or otherwise inconsistent inputs.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (p < 1, zero vector, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// Columns supplied as an orthonormal basis are not orthonormal.
class NotOrthonormalError : public Error {
 public:
  using Error::Error;
};

/// Eigenprojector diagonals are not constant, so the bounded-basis guarantee does not apply.
class NotTransitiveError : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraphError : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling ran out of retries. Carries the best value seen.
class SamplingFailure : public Error {
 public:
  SamplingFailure(const std::string& what, double best_coherence)
      : Error(what), best_coherence_(best_coherence) {}
  double best_coherence() const noexcept { return best_coherence_; }

 private:
  double best_coherence_;
};

}  // namespace cayley
