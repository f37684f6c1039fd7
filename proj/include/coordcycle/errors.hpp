#ifndef COORDCYCLE_ERRORS_HPP_
#define COORDCYCLE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace coordcycle {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Game with alignment a - b - c + d equal to zero; the indifference state is
// undefined.
class ZeroAlignment : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters, tolerances or configuration files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for the requested dynamic (e.g. a Jacobian for the
// non-smooth best response field).
class Unsupported : public Error {
 public:
  using Error::Error;
};

class InsufficientCrossings : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace coordcycle

#endif  // COORDCYCLE_ERRORS_HPP_
