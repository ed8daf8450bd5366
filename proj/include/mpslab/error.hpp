#pragma once

#include <stdexcept>
#include <string>

namespace mpslab {

/// Input violates a documented precondition (bad index, bad cut, size mismatch).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a fixed capacity (dense cap, determinant cap, sieve cap).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A dense tensor carries weight outside its particle-number sector.
class MalformedTensor : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough primes below the bound to build a prime state.
class InsufficientPrimes : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A block entry cannot be lifted to +-sqrt(p) for a pool prime.
class UnsupportedEntry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation is undefined on the zero state (entropies, spectra).
class ZeroState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mpslab
