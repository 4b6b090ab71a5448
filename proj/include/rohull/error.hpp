#pragma once

#include <stdexcept>
#include <string>

namespace rohull {

/// Base class for every failure reported by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when exact and floating scalars are combined.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// Invalid request: bad parameters, unreadable input or a mode that the
/// operation cannot run in.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace rohull
