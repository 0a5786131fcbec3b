#pragma once

#include <stdexcept>
#include <string>

namespace pressure_lab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A partial product of Jacobians left the representable range; use the
/// log-accumulating variant instead.
class CocycleOverflow : public Error {
 public:
  using Error::Error;
};

class EmptyCatalog : public Error {
 public:
  EmptyCatalog() : Error("orbit catalog is empty") {}
};

class NoSaddle : public Error {
 public:
  NoSaddle() : Error("orbit catalog contains no saddle") {}
};

/// A computed quantity contradicts a structural guarantee (e.g. a saddle with
/// non-expanding geometric potential).
class NumericalFault : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace pressure_lab
