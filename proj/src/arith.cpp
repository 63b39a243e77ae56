#include "latqmc/arith.hpp"

#include <limits>

namespace latqmc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b) {
      throw ValidationError("integer power " + std::to_string(b) + "^" + std::to_string(e) +
                            " overflows 64 bits");
    }
    r *= b;
  }
  return r;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  a %= n;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1U;
  }
  return r;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 0;
  std::int64_t old_r = static_cast<std::int64_t>(a % n);
  std::int64_t r = static_cast<std::int64_t>(n);
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw ValidationError(std::to_string(a) + " is not invertible modulo " + std::to_string(n));
  }
  const auto sn = static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(((old_s % sn) + sn) % sn);
}

std::uint64_t phi_prime_power(std::uint64_t b, unsigned r) {
  if (r == 0) return 1;
  return ipow(b, r - 1) * (b - 1);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace latqmc
