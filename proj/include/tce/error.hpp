#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tce {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, square root of a negative value.
class MathError : public Error {
 public:
  using Error::Error;
};

/// Malformed value string. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Degenerate polygons, non-rigid matrices, non-convex clip input and similar.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Rigid matrix whose rotation is not a multiple of 45 degrees.
class NonCanonicalAngle : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Operation only defined on the exact track received approximate input.
class NotExact : public Error {
 public:
  using Error::Error;
};

/// Float coordinate with no lattice value within tolerance.
class SnapError : public Error {
 public:
  using Error::Error;
};

/// Raw assembly that cannot become a valid instance.
class NormalizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace tce
