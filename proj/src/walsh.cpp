#include "latqmc/walsh.hpp"

#include <cmath>
#include <numbers>

#include "latqmc/wce.hpp"

namespace latqmc {

namespace {

double r_alpha(std::uint64_t h, double alpha, unsigned b) {
  unsigned psi = 0;
  for (std::uint64_t t = h / b; t > 0; t /= b) ++psi;
  return std::pow(static_cast<double>(b), -alpha * psi);
}

// 1-based position of the first nonzero base-b digit of num / b^P; 0 if num == 0
unsigned first_digit(std::uint64_t num, unsigned P, unsigned b) {
  if (num == 0) return 0;
  unsigned len = 0;
  for (std::uint64_t t = num; t > 0; t /= b) ++len;
  return P - len + 1;
}

}  // namespace

double mu_b(double alpha, unsigned b) {
  if (!(alpha > 1.0)) throw ValidationError("mu_b needs alpha > 1");
  const double ba = std::pow(static_cast<double>(b), alpha);
  return ba * (b - 1.0) / (ba - b);
}

std::complex<double> walsh_wal(std::uint64_t h, std::uint64_t num, unsigned P, unsigned b) {
  if (num >= ipow(b, P)) throw ValidationError("walsh_wal: x must lie in [0, 1)");
  // digits x_1..x_P of x, most significant first
  std::vector<unsigned> x(P);
  for (unsigned k = P; k-- > 0; num /= b) x[k] = static_cast<unsigned>(num % b);
  std::uint64_t phase = 0;
  for (unsigned k = 0; k < P && h > 0; ++k, h /= b) phase += static_cast<std::uint64_t>(x[k]) * (h % b);
  phase %= b;
  if (phase == 0) return {1.0, 0.0};
  const double a = 2.0 * std::numbers::pi * static_cast<double>(phase) / b;
  return {std::cos(a), std::sin(a)};
}

double walsh_kernel(std::uint64_t num, unsigned P, double alpha, unsigned b) {
  const double mu = mu_b(alpha, b);
  const unsigned a = first_digit(num, P, b);
  if (a == 0) return mu;
  return mu - std::pow(static_cast<double>(b), (a - 1.0) * (1.0 - alpha)) * (mu + 1.0);
}

double walsh_kernel_truncated(std::uint64_t num, unsigned P, double alpha, unsigned b, unsigned H) {
  const std::uint64_t top = ipow(b, H);
  if (top > (std::uint64_t{1} << 24)) throw ScaleGuardError("truncated Walsh sum limited to b^H <= 2^24");
  double sum = 0.0;
  for (std::uint64_t h = 1; h <= top; ++h) sum += r_alpha(h, alpha, b) * walsh_wal(h, num, P, b).real();
  return sum;
}

std::vector<double> walsh_kernel_table(unsigned b, unsigned m, double alpha) {
  const double mu = mu_b(alpha, b);
  const std::uint64_t N = ipow(b, m);
  std::vector<double> by_len(m + 1);
  by_len[0] = mu;
  for (unsigned len = 1; len <= m; ++len) {
    const unsigned a = m - len + 1;
    by_len[len] = mu - std::pow(static_cast<double>(b), (a - 1.0) * (1.0 - alpha)) * (mu + 1.0);
  }
  std::vector<double> t(N);
  unsigned len = 0;
  std::uint64_t next = 1;
  for (std::uint64_t c = 0; c < N; ++c) {
    if (c == next) {
      ++len;
      next *= b;
    }
    t[c] = by_len[len];
  }
  return t;
}

double wce_walsh_product(std::span<const std::uint64_t> effective, const SpaceParams& params, bool* clamped) {
  const auto& gammas = params.weights.as_product().gammas;
  if (gammas.size() < effective.size()) throw ValidationError("product weight list shorter than dimension");
  const unsigned b = params.b, m = params.m;
  const std::uint64_t N = params.N;
  const auto phi = walsh_kernel_table(b, m, params.alpha);
  std::vector<double> prod(N, 1.0);
  double scalar = 1.0;
  for (std::size_t j = 0; j < effective.size(); ++j) {
    if (effective[j] % N == 0) {
      scalar *= 1.0 + gammas[j] * phi[0];
      continue;
    }
    const auto img = multiples(effective[j], b, m);
    for (std::uint64_t n = 0; n < N; ++n) prod[n] *= 1.0 + gammas[j] * phi[img[n]];
  }
  double sum = 0.0;
  for (double p : prod) sum += p;
  return clamp_squared_error(-1.0 + scalar * sum / static_cast<double>(N), clamped);
}

double wce_walsh_product(const PolyGeneratingVector& g, const SpaceParams& params, bool* clamped) {
  if (g.b != params.b || g.m != params.m) throw ValidationError("vector and space parameters disagree on N");
  return wce_walsh_product(std::span<const std::uint64_t>(g.effective), params, clamped);
}

double wce_walsh_dual_oracle(const PolyGeneratingVector& g, const SpaceParams& params, unsigned H) {
  const std::size_t s = g.s();
  if (s < 1 || s > 3) throw ScaleGuardError("Walsh dual oracle limited to 1 <= s <= 3");
  const unsigned b = params.b, m = params.m;
  const std::uint64_t N = params.N;
  if (N > (1u << 12)) throw ScaleGuardError("Walsh dual oracle limited to b^m <= 2^12");
  const std::uint64_t top = ipow(b, H);
  if (top > (std::uint64_t{1} << 24)) throw ScaleGuardError("Walsh dual oracle limited to b^H <= 2^24");
  params.weights.require_dimension(s);

  // residue weights: tr_m(h) only sees h mod b^m
  std::vector<double> W(N, 0.0);
  for (std::uint64_t h = top; h >= 1; --h) W[h % N] += r_alpha(h, params.alpha, b);

  std::vector<std::vector<double>> A(s, std::vector<double>(N, 0.0));
  for (std::size_t j = 0; j < s; ++j) {
    const auto img = multiples(g.effective[j], b, m);
    for (std::uint64_t c = 0; c < N; ++c) A[j][img[c]] += W[c];
  }

  double total = 0.0;
  for (SubsetMask u = 1; u < (SubsetMask{1} << s); ++u) {
    const double gu = params.weights.gamma_subset(u);
    if (gu == 0.0) continue;
    std::vector<double> D(N, 0.0);
    D[0] = 1.0;
    for (std::size_t j = 0; j < s; ++j) {
      if (!((u >> j) & 1u)) continue;
      std::vector<double> next(N, 0.0);
      for (std::uint64_t c = 0; c < N; ++c) {
        if (D[c] == 0.0) continue;
        for (std::uint64_t y = 0; y < N; ++y) next[code_add(c, y, b, m)] += D[c] * A[j][y];
      }
      D.swap(next);
    }
    total += gu * D[0];
  }
  return total;
}

}  // namespace latqmc
