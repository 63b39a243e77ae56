#include "latqmc/wce.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace latqmc {

double clamp_squared_error(double e2, bool* clamped) {
  if (clamped != nullptr) *clamped = false;
  if (e2 >= 0.0) return e2;
  if (e2 >= -kNegativeClampTolerance) {
    if (clamped != nullptr) *clamped = true;
    return 0.0;
  }
  throw std::logic_error("squared worst-case error is negative: " + std::to_string(e2));
}

double wce_product(std::span<const std::uint64_t> effective, const SpaceParams& params, bool* clamped) {
  if (params.alpha != 2.0) throw ValidationError("wce_product supports alpha = 2 only");
  const auto& gammas = params.weights.as_product().gammas;
  if (gammas.size() < effective.size()) throw ValidationError("product weight list shorter than dimension");
  const std::uint64_t N = params.N;
  const Vector table = omega_table(N);
  Eigen::ArrayXd prod = Eigen::ArrayXd::Ones(static_cast<Eigen::Index>(N));
  double scalar = 1.0;
  for (std::size_t j = 0; j < effective.size(); ++j) {
    const double g = gammas[j];
    const std::uint64_t xi = effective[j] % N;
    if (xi == 0) {
      scalar *= 1.0 + g * table(0);
      continue;
    }
    std::uint64_t idx = 0;
    for (std::uint64_t k = 0; k < N; ++k) {
      prod(static_cast<Eigen::Index>(k)) *= 1.0 + g * table(static_cast<Eigen::Index>(idx));
      idx += xi;
      if (idx >= N) idx -= N;
    }
  }
  const double e2 = -1.0 + scalar * prod.sum() / static_cast<double>(N);
  return clamp_squared_error(e2, clamped);
}

double wce_product(const GeneratingVector& z, const SpaceParams& params, bool* clamped) {
  if (z.b != params.b || z.m != params.m) throw ValidationError("vector and space parameters disagree on N");
  return wce_product(std::span<const std::uint64_t>(z.effective), params, clamped);
}

double wce_general(std::span<const std::uint64_t> effective, const SpaceParams& params) {
  if (params.alpha != 2.0) throw ValidationError("wce_general supports alpha = 2 only");
  const std::size_t s = effective.size();
  if (s > kMaxGeneralDim) throw ScaleGuardError("wce_general: dimension exceeds 20");
  const WeightModel general = params.weights.to_general(s);
  const auto& terms = general.as_general().terms;
  const std::uint64_t N = params.N;
  const Vector table = omega_table(N);
  std::vector<double> v(s);
  double total = 0.0;
  for (std::uint64_t k = 0; k < N; ++k) {
    for (std::size_t j = 0; j < s; ++j) {
      v[j] = table(static_cast<Eigen::Index>(mulmod(k, effective[j], N)));
    }
    double acc = 0.0;
    for (const auto& [mask, g] : terms) {
      if (g == 0.0) continue;
      double p = g;
      for (SubsetMask u = mask; u != 0; u &= u - 1) p *= v[static_cast<std::size_t>(std::countr_zero(u))];
      acc += p;
    }
    total += acc;
  }
  return clamp_squared_error(total / static_cast<double>(N));
}

double wce_dual_oracle(std::span<const std::uint64_t> effective, const SpaceParams& params, std::uint64_t H) {
  const std::size_t s = effective.size();
  const std::uint64_t N = params.N;
  if (s > 8) throw ScaleGuardError("dual oracle: dimension above 8");
  if (N > 4096) throw ScaleGuardError("dual oracle: N above 4096");
  if (H == 0 || H > 1'000'000'000ULL) throw ScaleGuardError("dual oracle: truncation H must lie in [1, 1e9]");
  params.weights.require_dimension(s);

  // Residue classes: W[r] = sum of |h|^-alpha over 0 < |h| <= H with h == r (mod N).
  std::vector<double> W(N, 0.0);
  for (std::uint64_t h = H; h >= 1; --h) {
    const double rho = std::pow(static_cast<double>(h), -params.alpha);
    W[h % N] += rho;
    W[(N - h % N) % N] += rho;
  }

  double total = 0.0;
  std::vector<double> dist(N);
  std::vector<double> next(N);
  for (SubsetMask u = 1; u < (SubsetMask{1} << s); ++u) {
    const double g = params.weights.gamma_subset(u);
    if (g == 0.0) continue;
    std::fill(dist.begin(), dist.end(), 0.0);
    dist[0] = 1.0;
    for (SubsetMask rest = u; rest != 0; rest &= rest - 1) {
      const std::uint64_t z = effective[static_cast<std::size_t>(std::countr_zero(rest))] % N;
      std::fill(next.begin(), next.end(), 0.0);
      for (std::uint64_t t = 0; t < N; ++t) {
        if (dist[t] == 0.0) continue;
        std::uint64_t pos = t;
        for (std::uint64_t r = 0; r < N; ++r) {
          next[pos] += dist[t] * W[r];
          pos += z;
          if (pos >= N) pos -= N;
        }
      }
      dist.swap(next);
    }
    total += g * dist[0];
  }
  return total;
}

}  // namespace latqmc
