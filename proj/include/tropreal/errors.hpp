// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropreal {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression, scalar, or file. `position()` is a byte offset into
/// the offending text.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Kleene star applied to a series whose constant coefficient is not (or may
/// not be) the zero of the semiring.
class StarOfUnit : public Error {
public:
  using Error::Error;
};

/// Two operands disagree on the number of indeterminates, or a point has the
/// wrong length.
class ArityMismatch : public Error {
public:
  using Error::Error;
};

/// A realization dimension above the configured enumeration cap.
class DimensionCap : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

}  // namespace tropreal
