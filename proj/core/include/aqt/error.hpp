#pragma once

#include <stdexcept>
#include <string>

namespace aqt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different algebras, grids or groups, or have mismatched sizes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Density or positive-definite function fails hermiticity, positivity or normalization.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// An input lies outside an operation's documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical certificate could not be produced (non-SPD Gram, unresolvable shells).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace aqt
