#include "latqmc/construct.hpp"

#include <cmath>
#include <limits>

#include "latqmc/wce.hpp"

namespace latqmc {

namespace {

enum class Sweep { scs, cbc };

void require_fast_path(const SpaceParams& params, std::size_t s) {
  if (params.alpha != 2.0) throw ValidationError("fast constructions support alpha = 2 only");
  if (!params.weights.is_product()) throw ValidationError("fast constructions need product weights");
  params.weights.require_dimension(s);
}

// f[k] = 1 + gamma * omega({k xi / N})
void fill_factor(Eigen::ArrayXd& f, const Vector& table, double gamma, std::uint64_t xi, std::uint64_t N,
                 OpCounter* ops) {
  std::uint64_t idx = 0;
  for (std::uint64_t k = 0; k < N; ++k) {
    f(static_cast<Eigen::Index>(k)) = 1.0 + gamma * table(static_cast<Eigen::Index>(idx));
    idx += xi;
    if (idx >= N) idx -= N;
  }
  count(ops, N);
}

// first index whose score beats the running minimum by more than tol
std::size_t first_argmin(const Vector& T, double tol) {
  std::size_t best = 0;
  for (Eigen::Index p = 1; p < T.size(); ++p) {
    if (T(p) < T(static_cast<Eigen::Index>(best)) - tol) best = static_cast<std::size_t>(p);
  }
  return best;
}

ConstructionResult fast_sweep(const SpaceParams& params, const ReductionSchedule& schedule,
                              std::span<const std::uint64_t> seed, Sweep sweep, const ConstructionOptions& opts) {
  const std::size_t s = schedule.size();
  require_fast_path(params, s);
  if (schedule.base() != params.b) throw ValidationError("schedule base differs from space base");
  const unsigned b = params.b;
  const unsigned m = params.m;
  const std::uint64_t N = params.N;
  const auto Ni = static_cast<Eigen::Index>(N);
  const Vector table = omega_table(N);
  const std::size_t sst = sstar(schedule, m);
  OpCounter* ops = opts.ops;
  SpectraCache local;
  SpectraCache& cache = opts.cache ? *opts.cache : local;

  std::vector<std::uint64_t> xi(s, 0);
  if (sweep == Sweep::scs) xi.assign(seed.begin(), seed.end());

  double tail = 1.0;
  for (std::size_t j = sst; j < s; ++j) tail *= 1.0 + params.weights.gamma(j + 1) * table(0);

  Eigen::ArrayXd q = Eigen::ArrayXd::Ones(Ni);
  Eigen::ArrayXd f(Ni);
  if (sweep == Sweep::scs) {
    for (std::size_t j = 0; j < sst; ++j) {
      fill_factor(f, table, params.weights.gamma(j + 1), xi[j], N, ops);
      q *= f;
      count(ops, N);
    }
  }

  ConstructionResult res;
  std::vector<std::uint64_t> z(s, 1);
  for (std::size_t d = 0; d < sst; ++d) {
    const double gamma = params.weights.gamma(d + 1);
    Eigen::ArrayXd qd;
    if (sweep == Sweep::scs) {
      fill_factor(f, table, gamma, xi[d], N, ops);
      if (f.abs().minCoeff() < 1e-8) {
        qd = Eigen::ArrayXd::Ones(Ni);
        for (std::size_t j = 0; j < sst; ++j) {
          if (j == d) continue;
          fill_factor(f, table, params.weights.gamma(j + 1), xi[j], N, ops);
          qd *= f;
          count(ops, N);
        }
        ++res.recomputed_steps;
      } else {
        qd = q / f;
        count(ops, N);
      }
    } else {
      qd = q;
    }

    const unsigned n = m - schedule.w(d);
    const Vector folded = fold(qd.matrix(), ipow(b, n));
    const Vector T = cache.get(b, n)->apply(folded, ops);
    const double tol = kTieTolerance * table(0) * folded.cwiseAbs().sum();
    const std::size_t idx = gamma > 0.0 ? first_argmin(T, tol) : 0;
    z[d] = unit_at(idx, b);
    xi[d] = mulmod(schedule.multiplier_mod(d, m), z[d], N);

    if (opts.record_steps) {
      const double scale = sweep == Sweep::scs ? tail : 1.0;
      res.per_step_errors.push_back(-1.0 + scale * (qd.sum() + gamma * T(static_cast<Eigen::Index>(idx))) /
                                                static_cast<double>(N));
    }
    fill_factor(f, table, gamma, xi[d], N, ops);
    q = qd * f;
    count(ops, N);
  }

  res.vector = GeneratingVector::make(b, m, schedule, z);
  res.squared_error = clamp_squared_error(-1.0 + tail * q.sum() / static_cast<double>(N));
  if (ops) res.op_count = ops->mults;
  return res;
}

WeightModel restrict_weights(const WeightModel& w, std::size_t s) {
  if (w.is_product()) return w;
  std::map<SubsetMask, double> terms;
  for (const auto& [mask, g] : w.as_general().terms) {
    if ((mask >> s) == 0) terms.emplace(mask, g);
  }
  return WeightModel::general(std::move(terms));
}

void naive_guard(const SpaceParams& params, std::size_t s) {
  if (s > 8) throw ScaleGuardError("literal constructions limited to s <= 8");
  if (params.N > (1u << 10)) throw ScaleGuardError("literal constructions limited to N <= 2^10");
}

std::size_t pick_candidate(const std::vector<double>& e2) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < e2.size(); ++i) {
    if (e2[i] < e2[best] - kTieTolerance * (1.0 + std::abs(e2[best]))) best = i;
  }
  return best;
}

}  // namespace

double squared_error(std::span<const std::uint64_t> effective, const SpaceParams& params) {
  if (params.weights.is_product()) return wce_product(effective, params);
  return wce_general(effective, params);
}

ConstructionResult reduced_fast_scs(const SpaceParams& params, const ReductionSchedule& schedule,
                                    std::span<const std::uint64_t> seed, const ConstructionOptions& opts) {
  if (!is_reduced_form(seed, schedule, params.m)) {
    throw ValidationError("SCS seed must have components Y_j zbar_j mod N with zbar_j in Z_{N,w_j}");
  }
  return fast_sweep(params, schedule, seed, Sweep::scs, opts);
}

ConstructionResult reduced_fast_scs(const SpaceParams& params, const ReductionSchedule& schedule,
                                    const GeneratingVector& seed, const ConstructionOptions& opts) {
  if (seed.b != params.b || seed.m != params.m) throw ValidationError("seed and space parameters disagree on N");
  return reduced_fast_scs(params, schedule, std::span<const std::uint64_t>(seed.effective), opts);
}

ConstructionResult reduced_fast_scs(const SpaceParams& params, const ReductionSchedule& schedule,
                                    const ConstructionOptions& opts) {
  return reduced_fast_scs(params, schedule, GeneratingVector::ones(params.b, params.m, schedule), opts);
}

ConstructionResult fast_scs(const SpaceParams& params, std::size_t s, const ConstructionOptions& opts) {
  return reduced_fast_scs(params, ReductionSchedule::zeros(params.b, s), opts);
}

ConstructionResult reduced_fast_cbc(const SpaceParams& params, const ReductionSchedule& schedule,
                                    const ConstructionOptions& opts) {
  return fast_sweep(params, schedule, {}, Sweep::cbc, opts);
}

ConstructionResult fast_cbc(const SpaceParams& params, std::size_t s, const ConstructionOptions& opts) {
  return reduced_fast_cbc(params, ReductionSchedule::zeros(params.b, s), opts);
}

ConstructionResult naive_scs(const SpaceParams& params, const ReductionSchedule& schedule,
                             std::span<const std::uint64_t> seed) {
  const std::size_t s = schedule.size();
  naive_guard(params, s);
  if (seed.size() != s) throw ValidationError("seed length differs from schedule length");
  params.weights.require_dimension(s);
  const unsigned m = params.m;
  std::vector<std::uint64_t> cur(seed.begin(), seed.end());
  for (auto& c : cur) c %= params.N;
  std::vector<std::uint64_t> z(s, 1);
  ConstructionResult res;
  for (std::size_t d = 0; d < s; ++d) {
    const auto cands = reduced_search_space(params.b, m, schedule.w(d));
    const std::uint64_t Y = schedule.multiplier_mod(d, m);
    std::vector<double> e2(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      cur[d] = mulmod(Y, cands[i], params.N);
      e2[i] = squared_error(cur, params);
    }
    const std::size_t best = pick_candidate(e2);
    z[d] = cands[best];
    cur[d] = mulmod(Y, z[d], params.N);
    res.per_step_errors.push_back(e2[best]);
  }
  res.vector = GeneratingVector::make(params.b, m, schedule, z);
  res.squared_error = squared_error(res.vector.effective, params);
  return res;
}

ConstructionResult naive_cbc(const SpaceParams& params, const ReductionSchedule& schedule) {
  const std::size_t s = schedule.size();
  naive_guard(params, s);
  params.weights.require_dimension(s);
  const unsigned m = params.m;
  std::vector<std::uint64_t> cur;
  std::vector<std::uint64_t> z(s, 1);
  ConstructionResult res;
  for (std::size_t d = 0; d < s; ++d) {
    SpaceParams prefix = params;
    prefix.weights = restrict_weights(params.weights, d + 1);
    const auto cands = reduced_search_space(params.b, m, schedule.w(d));
    const std::uint64_t Y = schedule.multiplier_mod(d, m);
    cur.push_back(0);
    std::vector<double> e2(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      cur[d] = mulmod(Y, cands[i], params.N);
      e2[i] = squared_error(cur, prefix);
    }
    const std::size_t best = pick_candidate(e2);
    z[d] = cands[best];
    cur[d] = mulmod(Y, z[d], params.N);
    res.per_step_errors.push_back(e2[best]);
  }
  res.vector = GeneratingVector::make(params.b, m, schedule, z);
  res.squared_error = squared_error(res.vector.effective, params);
  return res;
}

ExhaustiveResult exhaustive_best(const SpaceParams& params, const ReductionSchedule& schedule) {
  const std::size_t s = schedule.size();
  if (s < 1 || s > 3) throw ScaleGuardError("exhaustive search limited to 1 <= s <= 3");
  if (params.N > (1u << 7)) throw ScaleGuardError("exhaustive search limited to N <= 2^7");
  params.weights.require_dimension(s);
  std::vector<std::vector<std::uint64_t>> spaces(s);
  for (std::size_t j = 0; j < s; ++j) spaces[j] = reduced_search_space(params.b, params.m, schedule.w(j));

  std::vector<std::size_t> pos(s, 0);
  std::vector<std::uint64_t> cur(s), z(s), best_z;
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t j = 0; j < s; ++j) {
      z[j] = spaces[j][pos[j]];
      cur[j] = mulmod(schedule.multiplier_mod(j, params.m), z[j], params.N);
    }
    const double e2 = squared_error(cur, params);
    if (e2 < best) {
      best = e2;
      best_z = z;
    }
    std::size_t j = 0;
    while (j < s && ++pos[j] == spaces[j].size()) pos[j++] = 0;
    if (j == s) break;
  }
  return {GeneratingVector::make(params.b, params.m, schedule, best_z), best};
}

MonotonicityReport verify_monotonicity(const SpaceParams& params, const ReductionSchedule& schedule,
                                       const GeneratingVector& seed) {
  if (!is_reduced_form(seed.effective, schedule, params.m)) {
    throw ValidationError("monotonicity check needs a seed of the form Y_j zbar_j");
  }
  MonotonicityReport rep;
  rep.seed_error = std::sqrt(squared_error(seed.effective, params));
  ConstructionResult out = params.weights.is_product() ? reduced_fast_scs(params, schedule, seed)
                                                       : naive_scs(params, schedule, seed.effective);
  rep.output_error = std::sqrt(squared_error(out.vector.effective, params));
  rep.holds = rep.output_error <= rep.seed_error + 1e-12;
  rep.output = std::move(out.vector);
  return rep;
}

}  // namespace latqmc
