#pragma once

#include <stdexcept>
#include <string>

namespace divisum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested segment is larger than the configured segment size.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// An exact integer result left the signed 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain where a formula or bound is stated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A certified radius target could not be met.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// r1 + 2 r2 != n_K, or an unsupported degree.
class SignatureError : public Error {
 public:
  using Error::Error;
};

// An enclosure straddles a decision boundary even at maximum precision.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

}  // namespace divisum
