#pragma once

#include <stdexcept>
#include <string>

namespace rigspace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed an argument outside an operation's contract.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input could not be read or parsed as a whole (empty file, bad rule file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two artifacts that must describe the same corpus disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Floating-point result violated a mathematical bound beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rigspace
