#pragma once

#include <stdexcept>
#include <string>

namespace pgn {

/// Base of every exception thrown by the core library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (time outside a path, bad index,
/// non-positive horizon, malformed dimensions).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A path that was expected to satisfy the template axioms does not.
class InvalidTemplateError : public Error {
public:
  using Error::Error;
};

/// Lattice enumeration exceeded its candidate budget.
class BudgetError : public Error {
public:
  using Error::Error;
};

/// Flow time outside the range that the working precision can represent.
class RangeError : public Error {
public:
  using Error::Error;
};

/// A numeric invariant (unimodularity, Minkowski bounds) failed.
class InvariantError : public Error {
public:
  using Error::Error;
};

/// Malformed input document (JSON, CSV, rational literal).
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace pgn
