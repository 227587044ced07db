#pragma once

#include <stdexcept>
#include <string>

namespace seqdyn {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document or a tree/preference structure that violates the
// game invariants.
class InputError : public Error {
 public:
  using Error::Error;
};

// An enumeration (profiles, coalition deviations, ordered partitions) would
// exceed its configured bound.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace seqdyn
