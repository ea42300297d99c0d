#ifndef CYBEFORGE_ERRORS_HPP
#define CYBEFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cybeforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class TagMismatch : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// A bilinear form (usually the Killing form) was required to be invertible.
class SingularForm : public Error {
public:
  using Error::Error;
};

class SingularMatrix : public Error {
public:
  using Error::Error;
};

/// Root decomposition could not be performed over the rationals.
class DecompositionFailure : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// Input outside a documented range (algebra rank, polynomial degree, ...).
class RangeError : public Error {
public:
  using Error::Error;
};

/// A mathematical precondition (group closure, commuting pair, symmetry) failed.
/// The message carries the witness.
class PreconditionFailure : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace cybeforge

#endif
