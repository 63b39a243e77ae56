#pragma once

// Walsh functions and worst-case errors of polynomial lattice rules in the
// weighted Walsh space with r(h) = b^{-alpha floor(log_b h)}.

#include <complex>
#include <cstdint>
#include <vector>

#include "latqmc/poly.hpp"

namespace latqmc {

/// sum_{h >= 1} b^{-alpha floor(log_b h)} = b^alpha (b - 1) / (b^alpha - b).
double mu_b(double alpha, unsigned b);

/// wal_h(x) for x = num / b^P.
std::complex<double> walsh_wal(std::uint64_t h, std::uint64_t num, unsigned P, unsigned b);

/// phi(x) = sum_{h >= 1} r(h) wal_h(x) in closed form, x = num / b^P.
/// With a the position of the first nonzero digit of x:
///   phi(x) = mu - b^{(a-1)(1-alpha)} (mu + 1), and phi(0) = mu.
double walsh_kernel(std::uint64_t num, unsigned P, double alpha, unsigned b);

/// Partial sum over 1 <= h <= b^H, evaluated term by term.
double walsh_kernel_truncated(std::uint64_t num, unsigned P, double alpha, unsigned b, unsigned H);

/// phi(code / b^m) for every code < b^m.
std::vector<double> walsh_kernel_table(unsigned b, unsigned m, double alpha);

/// e^2 = -1 + (1/b^m) sum_n prod_j (1 + gamma_j phi(x_n^(j))). Product weights.
double wce_walsh_product(const PolyGeneratingVector& g, const SpaceParams& params, bool* clamped = nullptr);
double wce_walsh_product(std::span<const std::uint64_t> effective, const SpaceParams& params,
                         bool* clamped = nullptr);

/// Dual-space sum truncated to 1 <= h_j <= b^H; any weight model, s <= 3.
double wce_walsh_dual_oracle(const PolyGeneratingVector& g, const SpaceParams& params, unsigned H);

}  // namespace latqmc
