#pragma once

#include <stdexcept>
#include <string>

namespace ccb {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text: graph files, word syntax, target descriptors.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Violated precondition on otherwise well-formed input (unknown vertex,
/// set that is not a clique, path that is not a geodesic, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A configured resource bound was exceeded. Never silently degraded.
class ResourceLimitError : public Error {
public:
  using Error::Error;
};

/// An internal invariant failed to re-verify. Indicates a bug, not bad input.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace ccb
