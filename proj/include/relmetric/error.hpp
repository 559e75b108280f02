#pragma once

#include <stdexcept>
#include <string>

namespace relmetric {

// Base of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside the range an operation accepts.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// M(|x|,|y|) vanished for two distinct points.
class DegenerateWeight : public Error {
 public:
  using Error::Error;
};

// A point is not admissible for the operation (outside G, or the point at infinity
// passed where only finite points make sense).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A user-supplied scalar function returned a non-positive or non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Text input (weight specs, points, domain files, reports) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace relmetric
