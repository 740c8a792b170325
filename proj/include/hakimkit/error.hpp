#pragma once

#include <stdexcept>
#include <string>

namespace hakimkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Series arithmetic preconditions (truncation mismatch, divisibility, nonzero constant term).
class SeriesError : public Error {
 public:
  using Error::Error;
};

/// Map construction and fixed-point preconditions.
class MapError : public Error {
 public:
  using Error::Error;
};

/// Root finder failed to converge or was given a zero polynomial.
class RootError : public Error {
 public:
  using Error::Error;
};

/// Invalid orbit or raster parameters.
class DynamicsError : public Error {
 public:
  using Error::Error;
};

/// Malformed map specification document.
class SpecError : public Error {
 public:
  SpecError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what) {}
};

}  // namespace hakimkit
