#pragma once

#include <stdexcept>
#include <string>

namespace ctseq {

/// Base class for all library errors. The CLI maps the concrete type to a
/// stable exit code (see cli.hpp).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: composite modulus, digit out of range, unparsable
/// polynomial/combo text, mismatched numeral bases, unsupported shapes.
class InvalidInputError : public Error {
public:
  using Error::Error;
};

/// Structurally valid input that falls outside an operation's hypothesis:
/// digit table has a zero where none is allowed, k below admissibility,
/// non-invertible divisor, the wrong reduction branch.
class InapplicableError : public Error {
public:
  using Error::Error;
};

/// An exact scan or oracle evaluation was asked to exceed its work budget.
class BudgetError : public Error {
public:
  using Error::Error;
};

/// A construction that verifies its own output found a mismatch. Always a
/// bug, never a caller error.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace ctseq
