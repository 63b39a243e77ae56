#include "latqmc/bounds.hpp"

#include <bit>
#include <cmath>

#include "latqmc/kernel.hpp"

namespace latqmc {

namespace {

void check_lambda(double lambda, double alpha) {
  if (!(lambda > 1.0 / alpha && lambda <= 1.0)) {
    throw ValidationError("lambda must lie in (1/alpha, 1]");
  }
}

void check_delta(double delta, double alpha) {
  if (!(delta > 0.0 && delta <= (alpha - 1.0) / 2.0)) {
    throw ValidationError("delta must lie in (0, (alpha-1)/2]");
  }
}

double pow_b(unsigned b, double e) { return std::pow(static_cast<double>(b), e); }

}  // namespace

namespace detail {

double reduced_bound(const SpaceParams& params, const ReductionSchedule& schedule, double lambda,
                     const std::function<double(double)>& base_sum) {
  check_lambda(lambda, params.alpha);
  const std::size_t s = schedule.size();
  params.weights.require_dimension(s);
  const double c = base_sum(params.alpha * lambda);
  auto denom = [&](std::size_t d) {
    const unsigned w = schedule.w(d);
    return pow_b(params.b, w >= params.m ? 0.0 : static_cast<double>(params.m - w));
  };

  double total = 0.0;
  if (params.weights.is_product()) {
    // sum_{d in u} prod_{j in u} a_j = a_d prod_{j != d} (1 + a_j)
    std::vector<double> a(s);
    for (std::size_t j = 0; j < s; ++j) a[j] = std::pow(params.weights.gamma(j + 1), lambda) * c;
    std::vector<double> prefix(s + 1, 1.0);
    std::vector<double> suffix(s + 1, 1.0);
    for (std::size_t j = 0; j < s; ++j) prefix[j + 1] = prefix[j] * (1.0 + a[j]);
    for (std::size_t j = s; j-- > 0;) suffix[j] = suffix[j + 1] * (1.0 + a[j]);
    for (std::size_t d = 0; d < s; ++d) total += 2.0 * a[d] * prefix[d] * suffix[d + 1] / denom(d);
  } else {
    for (const auto& [mask, g] : params.weights.as_general().terms) {
      if (g == 0.0) continue;
      const double term = 2.0 * std::pow(g, lambda) * std::pow(c, std::popcount(mask));
      for (SubsetMask u = mask; u != 0; u &= u - 1) {
        total += term / denom(static_cast<std::size_t>(std::countr_zero(u)));
      }
    }
  }
  return std::pow(total, 1.0 / lambda);
}

double reduced_constant_general(const SpaceParams& params, const ReductionSchedule& schedule, double delta,
                                const std::function<double(double)>& base_sum) {
  check_delta(delta, params.alpha);
  const std::size_t s = schedule.size();
  const WeightModel general = params.weights.to_general(s);
  const double lambda = 1.0 / (params.alpha - 2.0 * delta);
  const double c = base_sum(params.alpha * lambda);
  double total = 0.0;
  for (const auto& [mask, g] : general.as_general().terms) {
    if (g == 0.0) continue;
    const double term = std::pow(g, lambda) * std::pow(c, std::popcount(mask));
    for (SubsetMask u = mask; u != 0; u &= u - 1) {
      total += term * pow_b(params.b, schedule.w(static_cast<std::size_t>(std::countr_zero(u))));
    }
  }
  return std::pow(2.0 * total, params.alpha / 2.0 - delta);
}

double reduced_constant_product(const SpaceParams& params, const ReductionSchedule& schedule, double delta,
                                const std::function<double(double)>& base_sum) {
  check_delta(delta, params.alpha);
  const std::size_t s = schedule.size();
  params.weights.require_dimension(s);
  const double lambda = 1.0 / (params.alpha - 2.0 * delta);
  const double c = base_sum(params.alpha * lambda);
  double weighted = 0.0;
  for (std::size_t d = 0; d < s; ++d) {
    weighted += std::pow(params.weights.gamma(d + 1), lambda) * pow_b(params.b, schedule.w(d));
  }
  double prod = 1.0;
  for (std::size_t j = 0; j + 1 < s; ++j) prod *= 1.0 + std::pow(params.weights.gamma(j + 1), lambda) * c;
  return std::pow(weighted * 2.0 * c * prod, params.alpha / 2.0 - delta);
}

}  // namespace detail

double scs_error_bound(const SpaceParams& params, const ReductionSchedule& schedule, double lambda) {
  return detail::reduced_bound(params, schedule, lambda, [](double x) { return 2.0 * zeta(x); });
}

double corollary_constant(const SpaceParams& params, const ReductionSchedule& schedule, double delta,
                          ConstantMode mode) {
  auto two_zeta = [](double x) { return 2.0 * zeta(x); };
  if (mode == ConstantMode::general) return detail::reduced_constant_general(params, schedule, delta, two_zeta);
  return detail::reduced_constant_product(params, schedule, delta, two_zeta);
}

}  // namespace latqmc
