#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>

#include "latqmc/space.hpp"

namespace latqmc {

WeightModel::WeightModel(ProductWeights w) : model_(std::move(w)) {
  for (double g : std::get<ProductWeights>(model_).gammas) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ValidationError("product weights must be finite and non-negative");
  }
}

WeightModel::WeightModel(GeneralWeights w) : model_(std::move(w)) {
  for (const auto& [mask, g] : std::get<GeneralWeights>(model_).terms) {
    if (mask == 0) throw ValidationError("general weights: the empty subset is implicit (gamma = 1)");
    if (!(g >= 0.0) || !std::isfinite(g)) throw ValidationError("general weights must be finite and non-negative");
  }
}

WeightModel WeightModel::geometric(double q, std::size_t s) {
  std::vector<double> g(s);
  double v = 1.0;
  for (std::size_t j = 0; j < s; ++j) {
    v *= q;
    g[j] = v;
  }
  return product(std::move(g));
}

WeightModel WeightModel::polynomial(double a, std::size_t s) {
  std::vector<double> g(s);
  for (std::size_t j = 0; j < s; ++j) g[j] = std::pow(static_cast<double>(j + 1), -a);
  return product(std::move(g));
}

const ProductWeights& WeightModel::as_product() const {
  if (!is_product()) throw ValidationError("operation requires product weights");
  return std::get<ProductWeights>(model_);
}

const GeneralWeights& WeightModel::as_general() const {
  if (is_product()) throw ValidationError("operation requires general weights");
  return std::get<GeneralWeights>(model_);
}

double WeightModel::gamma(std::size_t j) const {
  const auto& g = as_product().gammas;
  if (j == 0 || j > g.size()) throw ValidationError("product weight index out of range");
  return g[j - 1];
}

double WeightModel::gamma_subset(SubsetMask u) const {
  if (u == 0) return 1.0;
  if (is_product()) {
    const auto& g = std::get<ProductWeights>(model_).gammas;
    double r = 1.0;
    for (unsigned j = 0; u != 0; ++j, u >>= 1U) {
      if (u & 1U) {
        if (j >= g.size()) throw ValidationError("product weight index out of range");
        r *= g[j];
      }
    }
    return r;
  }
  const auto& t = std::get<GeneralWeights>(model_).terms;
  const auto it = t.find(u);
  return it == t.end() ? 0.0 : it->second;
}

void WeightModel::require_dimension(std::size_t s) const {
  if (is_product()) {
    if (std::get<ProductWeights>(model_).gammas.size() < s) {
      throw ValidationError("product weight list shorter than dimension " + std::to_string(s));
    }
    return;
  }
  if (s > kMaxGeneralDim) throw ValidationError("general weights support at most 20 dimensions");
  for (const auto& [mask, g] : std::get<GeneralWeights>(model_).terms) {
    if ((mask >> s) != 0) throw ValidationError("general weight subset outside [s]");
  }
}

WeightModel WeightModel::to_general(std::size_t s) const {
  require_dimension(s);
  if (!is_product()) return *this;
  if (s > kMaxGeneralDim) throw ValidationError("general weights support at most 20 dimensions");
  std::map<SubsetMask, double> terms;
  for (SubsetMask u = 1; u < (SubsetMask{1} << s); ++u) terms.emplace(u, gamma_subset(u));
  return general(std::move(terms));
}

WeightModel sobolev_weight_map(const WeightModel& weights, double c) {
  if (weights.is_product()) {
    auto g = weights.as_product().gammas;
    for (double& v : g) v *= c;
    return WeightModel::product(std::move(g));
  }
  std::map<SubsetMask, double> terms;
  for (const auto& [mask, g] : weights.as_general().terms) {
    terms.emplace(mask, g * std::pow(c, std::popcount(mask)));
  }
  return WeightModel::general(std::move(terms));
}

SpaceParams SpaceParams::make(unsigned b, unsigned m, double alpha, WeightModel weights) {
  if (!is_prime(b)) throw ValidationError("base b must be prime, got " + std::to_string(b));
  if (m < 1) throw ValidationError("exponent m must be positive");
  if (!(alpha > 1.0)) throw ValidationError("smoothness alpha must exceed 1");
  SpaceParams p;
  p.b = b;
  p.m = m;
  p.N = ipow(b, m);
  p.alpha = alpha;
  p.weights = std::move(weights);
  return p;
}

ReductionSchedule::ReductionSchedule(unsigned b, std::vector<unsigned> w) : b_(b), w_(std::move(w)) {
  if (!is_prime(b)) throw ValidationError("schedule base must be prime");
  for (std::size_t j = 1; j < w_.size(); ++j) {
    if (w_[j] < w_[j - 1]) throw ValidationError("reduction indices must be non-decreasing");
  }
}

ReductionSchedule ReductionSchedule::zeros(unsigned b, std::size_t s) {
  return ReductionSchedule(b, std::vector<unsigned>(s, 0));
}

ReductionSchedule ReductionSchedule::log_family(unsigned b, std::size_t s, double c) {
  if (!(c > 0.0)) throw ValidationError("schedule family parameter c must be positive");
  std::vector<unsigned> w(s);
  for (std::size_t j = 0; j < s; ++j) w[j] = floor_c_log(c, b, j + 1);
  return ReductionSchedule(b, std::move(w));
}

std::uint64_t ReductionSchedule::multiplier(std::size_t j) const { return ipow(b_, w_.at(j)); }

std::uint64_t ReductionSchedule::multiplier_mod(std::size_t j, unsigned m) const {
  const unsigned w = w_.at(j);
  return w >= m ? 0 : ipow(b_, w);
}

namespace {

using u128 = unsigned __int128;

u128 pow_saturating(u128 base, std::uint64_t e, bool& saturated) {
  const u128 cap = ~u128{0};
  u128 r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > cap / base) {
      saturated = true;
      return cap;
    }
    r *= base;
  }
  return r;
}

}  // namespace

unsigned floor_c_log(double c, unsigned b, std::uint64_t j) {
  if (j == 0) throw ValidationError("floor_c_log requires j >= 1");
  if (j == 1) return 0;
  const long double x = static_cast<long double>(c) * std::log(static_cast<long double>(j)) /
                        std::log(static_cast<long double>(b));
  auto k = static_cast<long long>(std::floor(x));
  // c as the exact ratio p/q of its shortest decimal representation.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), c, std::chars_format::fixed);
  std::string text(buf, res.ptr);
  std::uint64_t p = 0;
  std::uint64_t q = 1;
  bool frac = false;
  bool usable = text.size() < 18;
  for (char ch : text) {
    if (ch == '.') {
      frac = true;
      continue;
    }
    p = p * 10 + static_cast<std::uint64_t>(ch - '0');
    if (frac) q *= 10;
  }
  if (usable) {
    const std::uint64_t g = gcd(p, q);
    p /= g;
    q /= g;
    // b^{k q} <= j^p  <=>  k <= c log_b j
    auto le = [&](long long kk) -> int {
      if (kk < 0) return 1;
      bool s1 = false;
      bool s2 = false;
      const u128 lhs = pow_saturating(b, static_cast<std::uint64_t>(kk) * q, s1);
      const u128 rhs = pow_saturating(j, p, s2);
      if (s1 || s2) return -1;
      return lhs <= rhs ? 1 : 0;
    };
    for (int guard = 0; guard < 4; ++guard) {
      const int up = le(k + 1);
      const int here = le(k);
      if (up < 0 || here < 0) break;
      if (up == 1) {
        ++k;
      } else if (here == 0) {
        --k;
      } else {
        break;
      }
    }
  }
  return static_cast<unsigned>(std::max<long long>(k, 0));
}

std::size_t sstar(const ReductionSchedule& schedule, unsigned m) {
  std::size_t r = 0;
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    if (schedule.w(j) < m) r = j + 1;
  }
  return r;
}

std::vector<std::uint64_t> reduced_search_space(unsigned b, unsigned m, unsigned w) {
  if (w >= m) return {1};
  const std::uint64_t top = ipow(b, m - w);
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(top - top / b));
  for (std::uint64_t z = 1; z < top; ++z) {
    if (z % b != 0) out.push_back(z);
  }
  return out;
}

std::uint64_t reduced_search_space_size(unsigned b, unsigned m, unsigned w) {
  if (w >= m) return 1;
  return phi_prime_power(b, m - w);
}

GeneratingVector GeneratingVector::make(unsigned b, unsigned m, const ReductionSchedule& schedule,
                                        std::vector<std::uint64_t> z) {
  if (schedule.base() != b) throw ValidationError("schedule base differs from vector base");
  if (schedule.size() != z.size()) throw ValidationError("schedule length differs from vector dimension");
  GeneratingVector v;
  v.b = b;
  v.m = m;
  v.w = schedule.values();
  const std::uint64_t N = ipow(b, m);
  v.effective.resize(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const unsigned wj = schedule.w(j);
    if (wj >= m) {
      if (z[j] != 1) throw ValidationError("component " + std::to_string(j + 1) + " must be 1 (w_j >= m)");
      v.effective[j] = 0;
      continue;
    }
    if (z[j] == 0 || z[j] >= ipow(b, m - wj) || z[j] % b == 0) {
      throw ValidationError("component " + std::to_string(j + 1) + " = " + std::to_string(z[j]) +
                            " is not in the reduced search space");
    }
    v.effective[j] = mulmod(ipow(b, wj), z[j], N);
  }
  v.z = std::move(z);
  return v;
}

GeneratingVector GeneratingVector::unreduced(unsigned b, unsigned m, std::vector<std::uint64_t> z) {
  GeneratingVector v;
  v.b = b;
  v.m = m;
  v.w.assign(z.size(), 0);
  const std::uint64_t N = ipow(b, m);
  v.effective.resize(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) v.effective[j] = z[j] % N;
  v.z = std::move(z);
  return v;
}

GeneratingVector GeneratingVector::ones(unsigned b, unsigned m, const ReductionSchedule& schedule) {
  return make(b, m, schedule, std::vector<std::uint64_t>(schedule.size(), 1));
}

bool is_reduced_form(std::span<const std::uint64_t> seed, const ReductionSchedule& schedule, unsigned m) {
  if (seed.size() != schedule.size()) return false;
  const unsigned b = schedule.base();
  const std::uint64_t N = ipow(b, m);
  for (std::size_t j = 0; j < seed.size(); ++j) {
    const unsigned wj = schedule.w(j);
    if (seed[j] >= N) return false;
    if (wj >= m) {
      if (seed[j] != 0) return false;
      continue;
    }
    const std::uint64_t Y = ipow(b, wj);
    if (seed[j] % Y != 0) return false;
    const std::uint64_t zbar = seed[j] / Y;
    if (zbar == 0 || zbar % b == 0) return false;
  }
  return true;
}

}  // namespace latqmc
