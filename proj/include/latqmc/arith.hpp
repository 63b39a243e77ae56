#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latqmc {

/// Raised when caller-supplied input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input exceeds the size guard of an oracle or reference path.
class ScaleGuardError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

using Index = std::uint64_t;

bool is_prime(std::uint64_t n);

/// b^e with overflow detection (throws ValidationError on overflow).
std::uint64_t ipow(std::uint64_t b, unsigned e);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n);

/// Inverse of a modulo n by the extended Euclidean algorithm.
/// Throws ValidationError when gcd(a, n) != 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n);

/// Euler's totient of b^r for prime b.
std::uint64_t phi_prime_power(std::uint64_t b, unsigned r);

/// Distinct prime factors in ascending order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Position of z in the ascending enumeration of {1 <= z < b^r : gcd(z, b) = 1}.
inline std::uint64_t unit_rank(std::uint64_t z, std::uint64_t b) { return z - z / b - 1; }

/// Inverse of unit_rank.
inline std::uint64_t unit_at(std::uint64_t rank, std::uint64_t b) { return rank + rank / (b - 1) + 1; }

}  // namespace latqmc
