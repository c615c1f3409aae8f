#pragma once

#include <stdexcept>
#include <string>

namespace framefield {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands built over different fields, or parameters that are not valid.
class ParamError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

// A grid depth or signal size too small for the support of a mask.
class DepthError : public Error {
 public:
  using Error::Error;
};

// A grid or table that would not fit in memory.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Malformed input documents (JSON files, CLI arguments).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace framefield
