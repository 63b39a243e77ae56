#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <numbers>

#include "latqmc/arith.hpp"

namespace latqmc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Korobov kernel for alpha = 2: omega(x) = 2 pi^2 B_2(x), B_2(x) = x^2 - x + 1/6.
template <typename Scalar>
Scalar omega(Scalar x) {
  const Scalar two_pi2 = Scalar(2) * std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
  return two_pi2 * (x * x - x + Scalar(1) / Scalar(6));
}

/// omega with an explicit smoothness; only alpha == 2 has a closed form here.
double omega(double x, double alpha);

/// t[k] = omega(k / n) for k in [0, n). The table is mirrored so that
/// t[k] == t[n - k] bit for bit.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> omega_table(std::uint64_t n) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> t(static_cast<Eigen::Index>(n));
  for (std::uint64_t k = 0; 2 * k <= n; ++k) {
    t(static_cast<Eigen::Index>(k)) = omega(static_cast<Scalar>(k) / static_cast<Scalar>(n));
  }
  for (std::uint64_t k = n / 2 + 1; k < n; ++k) {
    t(static_cast<Eigen::Index>(k)) = t(static_cast<Eigen::Index>(n - k));
  }
  return t;
}

/// Tent transform phi(x) = 1 - |1 - 2x|.
template <typename Scalar>
Scalar tent(Scalar x) {
  using std::abs;
  return Scalar(1) - abs(Scalar(1) - Scalar(2) * x);
}

/// Riemann zeta for real s > 1.
double zeta(double s);

}  // namespace latqmc
