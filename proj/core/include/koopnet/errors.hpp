#pragma once

#include <stdexcept>
#include <string>

namespace koopnet {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Raised when a table violates a group or action law; the message names the
// offending elements.
class GroupAxiomError : public Error {
 public:
  using Error::Error;
};

class StructuralError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class MeasureInvarianceError : public Error {
 public:
  using Error::Error;
};

class NotInvariantError : public Error {
 public:
  using Error::Error;
};

class SubspaceMembershipError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

class InadmissibleWaveletError : public Error {
 public:
  using Error::Error;
};

// Malformed input files. Carries a JSON-pointer-like location.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& what)
      : Error(location + ": " + what), location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace koopnet
