#pragma once

#include <stdexcept>
#include <string>

namespace vrs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configurable resource ceiling (simplex count, tuple budget) was hit.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A coverage requirement could not be certified.
class CoverageError : public Error {
 public:
  using Error::Error;
};

}  // namespace vrs
