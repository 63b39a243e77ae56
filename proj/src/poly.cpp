#include "latqmc/poly.hpp"

#include <algorithm>
#include <string>

namespace latqmc {

namespace {

void trim(std::vector<unsigned>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void same_base(const PolyGF& a, const PolyGF& c) {
  if (a.b != c.b) throw ValidationError("polynomials over different fields");
}

}  // namespace

PolyGF PolyGF::make(unsigned b, std::vector<unsigned> coeffs) {
  if (!is_prime(b)) throw ValidationError("base must be prime");
  for (auto x : coeffs) {
    if (x >= b) throw ValidationError("coefficient out of range");
  }
  trim(coeffs);
  return PolyGF{b, std::move(coeffs)};
}

PolyGF add(const PolyGF& a, const PolyGF& c) {
  same_base(a, c);
  std::vector<unsigned> r(std::max(a.coeffs.size(), c.coeffs.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const unsigned x = i < a.coeffs.size() ? a.coeffs[i] : 0;
    const unsigned y = i < c.coeffs.size() ? c.coeffs[i] : 0;
    r[i] = (x + y) % a.b;
  }
  trim(r);
  return PolyGF{a.b, std::move(r)};
}

PolyGF mul_mod_xm(const PolyGF& a, const PolyGF& c, unsigned m) {
  same_base(a, c);
  std::vector<unsigned> r(m, 0);
  for (std::size_t i = 0; i < a.coeffs.size() && i < m; ++i) {
    for (std::size_t j = 0; j < c.coeffs.size() && i + j < m; ++j) {
      r[i + j] = (r[i + j] + a.coeffs[i] * c.coeffs[j]) % a.b;
    }
  }
  trim(r);
  return PolyGF{a.b, std::move(r)};
}

bool is_unit_mod_xm(const PolyGF& a) { return !a.coeffs.empty() && a.coeffs[0] != 0; }

PolyGF trm(std::uint64_t h, unsigned m, unsigned b) {
  std::vector<unsigned> c;
  for (unsigned i = 0; i < m && h > 0; ++i, h /= b) c.push_back(static_cast<unsigned>(h % b));
  trim(c);
  return PolyGF{b, std::move(c)};
}

double nu(const PolyGF& v, unsigned m) {
  return static_cast<double>(to_code(v, m)) / static_cast<double>(ipow(v.b, m));
}

std::uint64_t to_code(const PolyGF& v, unsigned m) {
  std::uint64_t code = 0;
  for (std::size_t i = std::min<std::size_t>(v.coeffs.size(), m); i-- > 0;) code = code * v.b + v.coeffs[i];
  return code;
}

PolyGF from_code(std::uint64_t code, unsigned b) {
  std::vector<unsigned> c;
  for (; code > 0; code /= b) c.push_back(static_cast<unsigned>(code % b));
  return PolyGF{b, std::move(c)};
}

std::uint64_t code_add(std::uint64_t a, std::uint64_t c, unsigned b, unsigned m) {
  if (b == 2) return (a ^ c) & ((std::uint64_t{1} << m) - 1);
  std::uint64_t r = 0, p = 1;
  for (unsigned i = 0; i < m; ++i, p *= b) {
    r += ((a % b + c % b) % b) * p;
    a /= b;
    c /= b;
  }
  return r;
}

std::uint64_t code_mul(std::uint64_t a, std::uint64_t c, unsigned b, unsigned m) {
  const std::uint64_t N = ipow(b, m);
  std::uint64_t r = 0;
  std::uint64_t shifted = c % N;
  for (unsigned i = 0; i < m && a > 0; ++i, a /= b) {
    for (std::uint64_t k = 0; k < a % b; ++k) r = code_add(r, shifted, b, m);
    shifted = (shifted * b) % N;
  }
  return r;
}

PolyGeneratingVector PolyGeneratingVector::make(unsigned b, unsigned m, const ReductionSchedule& schedule,
                                                std::vector<std::uint64_t> g) {
  if (schedule.base() != b) throw ValidationError("schedule base differs from vector base");
  if (schedule.size() != g.size()) throw ValidationError("schedule length differs from vector dimension");
  PolyGeneratingVector v;
  v.b = b;
  v.m = m;
  v.w = schedule.values();
  const std::uint64_t N = ipow(b, m);
  v.effective.resize(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const unsigned wj = schedule.w(j);
    if (wj >= m) {
      if (g[j] != 1) throw ValidationError("component beyond s* must be the polynomial 1");
      v.effective[j] = 0;
      continue;
    }
    if (g[j] % b == 0 || g[j] >= ipow(b, m - wj)) {
      throw ValidationError("component " + std::to_string(j + 1) + " is not in G_{N,w}");
    }
    v.effective[j] = mulmod(g[j], ipow(b, wj), N);
  }
  v.g = std::move(g);
  return v;
}

PolyGeneratingVector PolyGeneratingVector::ones(unsigned b, unsigned m, const ReductionSchedule& schedule) {
  return make(b, m, schedule, std::vector<std::uint64_t>(schedule.size(), 1));
}

std::vector<std::uint64_t> poly_search_space(unsigned b, unsigned m, unsigned w) {
  return reduced_search_space(b, m, w);
}

std::vector<std::uint64_t> multiples(std::uint64_t v, unsigned b, unsigned m) {
  const std::uint64_t N = ipow(b, m);
  std::vector<std::uint64_t> basis(m);
  for (unsigned i = 0; i < m; ++i) basis[i] = mulmod(v, ipow(b, i), N);
  std::vector<std::uint64_t> img(N, 0);
  std::uint64_t top = 1;
  unsigned i = 0;
  for (std::uint64_t n = 1; n < N; ++n) {
    if (n == top * b) {
      top *= b;
      ++i;
    }
    img[n] = code_add(img[n - top], basis[i], b, m);
  }
  return img;
}

Matrix plr_points(const PolyGeneratingVector& g) {
  const std::uint64_t N = ipow(g.b, g.m);
  Matrix pts(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(g.s()));
  for (std::size_t j = 0; j < g.s(); ++j) {
    const auto img = multiples(g.effective[j], g.b, g.m);
    for (std::uint64_t n = 0; n < N; ++n) {
      pts(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) =
          static_cast<double>(img[n]) / static_cast<double>(N);
    }
  }
  return pts;
}

}  // namespace latqmc
