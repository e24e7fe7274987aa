#pragma once

#include <stdexcept>
#include <string>

namespace smba {

/// Invalid argument: dimension mismatch, non-finite data, out-of-range parameter.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (eigensolver, bracket search, divergence).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The starting point (or an iterate) is not strictly feasible.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cone family or parameter combination that has no smoothing implemented.
class UnsupportedFamilyError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Malformed problem/config document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smba
