#pragma once

#include <stdexcept>
#include <string>

namespace nnsig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero in Z_p") {}
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class SingularMatrix : public Error {
public:
  SingularMatrix() : Error("matrix is singular mod p") {}
};

class SingularWeights : public Error {
public:
  SingularWeights() : Error("binarized weight matrix is singular mod p") {}
};

class LimitExceeded : public Error {
public:
  using Error::Error;
};

// Protocol and codec errors.
class InvalidState : public Error {
public:
  using Error::Error;
};

class MalformedFrame : public Error {
public:
  using Error::Error;
};

class UnknownTag : public Error {
public:
  using Error::Error;
};

class LengthOverflow : public Error {
public:
  using Error::Error;
};

class ParameterMismatch : public Error {
public:
  using Error::Error;
};

class TransportError : public Error {
public:
  using Error::Error;
};

// Key and signature file errors.
class MalformedEncoding : public Error {
public:
  using Error::Error;
};

class UnsupportedVersion : public Error {
public:
  using Error::Error;
};

} // namespace nnsig
