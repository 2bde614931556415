#pragma once

#include <stdexcept>
#include <string>

namespace frares {

/// Parameter outside the domain of an operation (alpha <= 0, t < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// tau^{-alpha} is (numerically) an eigenvalue of the generator.
class ResolventSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series or quadrature did not reach its tolerance within the work cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hypotheses of a construction are violated (e.g. ||A|| >= 1 for the series).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frares
