#pragma once

// Polynomials over F_b modulo x^m and polynomial lattice point sets.
// Internally a polynomial of degree < m is a base-b integer code with the
// constant term as least significant digit.

#include <cstdint>
#include <vector>

#include "latqmc/kernel.hpp"
#include "latqmc/space.hpp"

namespace latqmc {

struct PolyGF {
  unsigned b = 2;
  std::vector<unsigned> coeffs;  // lowest degree first, no trailing zeros

  static PolyGF make(unsigned b, std::vector<unsigned> coeffs);
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 for zero
  bool operator==(const PolyGF&) const = default;
};

PolyGF add(const PolyGF& a, const PolyGF& c);
PolyGF mul_mod_xm(const PolyGF& a, const PolyGF& c, unsigned m);
bool is_unit_mod_xm(const PolyGF& a);

/// Base-b digits of h below position m as coefficients.
PolyGF trm(std::uint64_t h, unsigned m, unsigned b);

/// nu(v / x^m) = sum_{i < m} a_i b^{i-m}.
double nu(const PolyGF& v, unsigned m);

/// Integer code of v mod x^m and its inverse.
std::uint64_t to_code(const PolyGF& v, unsigned m);
PolyGF from_code(std::uint64_t code, unsigned b);

/// Digitwise sum mod b of two codes with m digits.
std::uint64_t code_add(std::uint64_t a, std::uint64_t c, unsigned b, unsigned m);
/// Code of (a * c) mod x^m.
std::uint64_t code_mul(std::uint64_t a, std::uint64_t c, unsigned b, unsigned m);

struct PolyGeneratingVector {
  unsigned b = 2;
  unsigned m = 1;
  std::vector<unsigned> w;
  std::vector<std::uint64_t> g;          // codes of g_j
  std::vector<std::uint64_t> effective;  // codes of x^{w_j} g_j mod x^m

  std::size_t s() const { return g.size(); }

  /// Validates g_j in G_{N,w_j} (g_j = 1 when w_j >= m).
  static PolyGeneratingVector make(unsigned b, unsigned m, const ReductionSchedule& schedule,
                                   std::vector<std::uint64_t> g);
  /// Seed (x^{w_1}, ..., x^{w_s}), i.e. every g_j = 1.
  static PolyGeneratingVector ones(unsigned b, unsigned m, const ReductionSchedule& schedule);
};

/// G_{N,w}: codes of polynomials with degree < m - w and nonzero constant
/// term, ascending; {1} when w >= m. Same code set as Z_{N,w}.
std::vector<std::uint64_t> poly_search_space(unsigned b, unsigned m, unsigned w);

/// b^m x s matrix, row n = (nu(n g_1 / x^m), ..., nu(n g_s / x^m)) with n = trm(n).
Matrix plr_points(const PolyGeneratingVector& g);

/// img[n] = code of trm(n) * v mod x^m for all n < b^m.
std::vector<std::uint64_t> multiples(std::uint64_t v, unsigned b, unsigned m);

}  // namespace latqmc
