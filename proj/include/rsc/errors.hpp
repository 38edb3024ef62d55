#pragma once

#include <stdexcept>
#include <string>

namespace rsc {

// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonIntegrableTail : public Error {
 public:
  NonIntegrableTail() : Error("function has a nonzero tail on the half-line") {}
};

class DomainMismatch : public Error {
 public:
  DomainMismatch() : Error("operands live on different interval domains") {}
};

class DivergentIntegral : public Error {
 public:
  explicit DivergentIntegral(const std::string& endpoint)
      : Error("integral diverges at " + endpoint), endpoint_(endpoint) {}
  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
};

class BadIntervals : public Error {
 public:
  using Error::Error;
};

class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

class InvalidQuery : public Error {
 public:
  using Error::Error;
};

class InvalidSpace : public Error {
 public:
  using Error::Error;
};

class BadInput : public Error {
 public:
  using Error::Error;
};

class NonSmoothProfile : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace rsc
