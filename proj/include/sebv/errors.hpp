#pragma once

#include <stdexcept>
#include <string>

namespace sebv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested qubit count or key width exceeds what the dense simulator allows.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A configuration or user input that the protocol refuses to run.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sebv
