#include "latqmc/poly_construct.hpp"

#include <cmath>

#include "latqmc/construct.hpp"
#include "latqmc/wce.hpp"

namespace latqmc {

namespace {

void fill_factor(Eigen::ArrayXd& f, const std::vector<double>& phi, double gamma, std::uint64_t eff, unsigned b,
                 unsigned m) {
  const auto img = multiples(eff, b, m);
  for (std::size_t n = 0; n < img.size(); ++n) f(static_cast<Eigen::Index>(n)) = 1.0 + gamma * phi[img[n]];
}

}  // namespace

PolyConstructionResult reduced_scs_poly(const SpaceParams& params, const ReductionSchedule& schedule,
                                        std::span<const std::uint64_t> seed) {
  const std::size_t s = schedule.size();
  if (!params.weights.is_product()) throw ValidationError("polynomial SCS needs product weights");
  params.weights.require_dimension(s);
  if (schedule.base() != params.b) throw ValidationError("schedule base differs from space base");
  if (params.m > 12) throw ScaleGuardError("polynomial SCS limited to m <= 12");
  if (seed.size() != s) throw ValidationError("seed length differs from schedule length");
  const unsigned b = params.b, m = params.m;
  const std::uint64_t N = params.N;
  for (auto c : seed) {
    if (c >= N) throw ValidationError("seed polynomial must have degree < m");
  }
  const auto Ni = static_cast<Eigen::Index>(N);
  const auto phi = walsh_kernel_table(b, m, params.alpha);
  const std::size_t sst = sstar(schedule, m);

  std::vector<std::uint64_t> eff(seed.begin(), seed.end());
  double tail = 1.0;
  for (std::size_t j = sst; j < s; ++j) tail *= 1.0 + params.weights.gamma(j + 1) * phi[0];

  Eigen::ArrayXd q = Eigen::ArrayXd::Ones(Ni);
  Eigen::ArrayXd f(Ni);
  for (std::size_t j = 0; j < sst; ++j) {
    fill_factor(f, phi, params.weights.gamma(j + 1), eff[j], b, m);
    q *= f;
  }

  PolyConstructionResult res;
  std::vector<std::uint64_t> g(s, 1);
  for (std::size_t d = 0; d < sst; ++d) {
    const double gamma = params.weights.gamma(d + 1);
    fill_factor(f, phi, gamma, eff[d], b, m);
    Eigen::ArrayXd qd;
    if (f.abs().minCoeff() < 1e-8) {
      qd = Eigen::ArrayXd::Ones(Ni);
      for (std::size_t j = 0; j < sst; ++j) {
        if (j == d) continue;
        fill_factor(f, phi, params.weights.gamma(j + 1), eff[j], b, m);
        qd *= f;
      }
      ++res.recomputed_steps;
    } else {
      qd = q / f;
    }

    const auto cands = poly_search_space(b, m, schedule.w(d));
    const std::uint64_t Y = schedule.multiplier_mod(d, m);
    const double tol = kTieTolerance * phi[0] * qd.abs().sum();
    std::size_t best = 0;
    double best_T = 0.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const auto img = multiples(mulmod(Y, cands[i], N), b, m);
      double T = 0.0;
      for (std::uint64_t n = 0; n < N; ++n) T += phi[img[n]] * qd(static_cast<Eigen::Index>(n));
      if (i == 0 || (gamma > 0.0 && T < best_T - tol)) {
        best = i;
        best_T = T;
      }
    }
    g[d] = cands[best];
    eff[d] = mulmod(Y, g[d], N);
    res.per_step_errors.push_back(-1.0 + tail * (qd.sum() + gamma * best_T) / static_cast<double>(N));
    fill_factor(f, phi, gamma, eff[d], b, m);
    q = qd * f;
  }
  res.vector = PolyGeneratingVector::make(b, m, schedule, g);
  res.squared_error = clamp_squared_error(-1.0 + tail * q.sum() / static_cast<double>(N));
  return res;
}

PolyConstructionResult reduced_scs_poly(const SpaceParams& params, const ReductionSchedule& schedule,
                                        const PolyGeneratingVector& seed) {
  if (seed.b != params.b || seed.m != params.m) throw ValidationError("seed and space parameters disagree on N");
  return reduced_scs_poly(params, schedule, std::span<const std::uint64_t>(seed.effective));
}

PolyConstructionResult reduced_scs_poly(const SpaceParams& params, const ReductionSchedule& schedule) {
  return reduced_scs_poly(params, schedule, PolyGeneratingVector::ones(params.b, params.m, schedule));
}

double scs_error_bound_poly(const SpaceParams& params, const ReductionSchedule& schedule, double lambda) {
  const unsigned b = params.b;
  return detail::reduced_bound(params, schedule, lambda, [b](double x) { return mu_b(x, b); });
}

double corollary_constant_poly(const SpaceParams& params, const ReductionSchedule& schedule, double delta,
                               ConstantMode mode) {
  const unsigned b = params.b;
  auto mu = [b](double x) { return mu_b(x, b); };
  if (mode == ConstantMode::general) return detail::reduced_constant_general(params, schedule, delta, mu);
  return detail::reduced_constant_product(params, schedule, delta, mu);
}

}  // namespace latqmc
