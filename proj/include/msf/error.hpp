#pragma once

#include <stdexcept>
#include <string>

namespace msf {

/// Caller supplied something outside an operation's domain.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource bound (dimension cap, enumeration budget, ...) was hit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An object is in a state that the operation does not accept (e.g. a collection
/// that is not regular where regularity is required).
class InvalidState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical guarantee was violated. Always a bug or a contradiction worth reporting.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace msf
