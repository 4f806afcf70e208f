#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace galmot {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed group data: bad table, order ceiling, non-subgroup, non-normal, non-cyclic.
class GroupError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must live over the same group do not.
class GroupMismatch : public Error {
 public:
  using Error::Error;
};

class ColoringError : public Error {
 public:
  using Error::Error;
};

class FieldError : public Error {
 public:
  using Error::Error;
};

/// A field or extension of the requested size exceeds the configured ceiling.
class CeilingExceeded : public FieldError {
 public:
  CeilingExceeded(const std::string& what, std::size_t required_degree)
      : FieldError(what), required_degree_(required_degree) {}
  std::size_t required_degree() const { return required_degree_; }

 private:
  std::size_t required_degree_;
};

/// q is not a good prime power for the cover (the cover is not Galois/étale there).
class BadPrime : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the candidate-tuple budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A point outside the étale locus, or a geometry invariant that failed.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class MotiveError : public Error {
 public:
  using Error::Error;
};

/// Parse failure in one of the spec grammars; carries the byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace galmot
