#pragma once

#include <functional>

#include "latqmc/space.hpp"

namespace latqmc {

enum class ConstantMode { general, product };

/// Upper bound on e^2 of any vector produced by the reduced SCS/CBC
/// constructions at dimension s = schedule.size():
///   ( sum_d sum_{d in u} gamma_u^lambda 2 (2 zeta(alpha lambda))^|u| / b^max(0, m - w_d) )^(1/lambda)
/// for lambda in (1/alpha, 1]. Product weights use the factorized O(s) form.
double scs_error_bound(const SpaceParams& params, const ReductionSchedule& schedule, double lambda);

/// Constant C with e <= C N^(-alpha/2 + delta), delta in (0, (alpha-1)/2].
/// general: subset form; product: factorized form with prod_{j<s}(1 + ...),
/// which dominates the subset form when the gammas are non-increasing.
double corollary_constant(const SpaceParams& params, const ReductionSchedule& schedule, double delta,
                          ConstantMode mode);

namespace detail {

// Shared by the lattice and polynomial flavors; `base_sum(x)` is 2 zeta(x)
// for lattices and mu_b(x) for polynomial lattices.
double reduced_bound(const SpaceParams& params, const ReductionSchedule& schedule, double lambda,
                     const std::function<double(double)>& base_sum);

double reduced_constant_general(const SpaceParams& params, const ReductionSchedule& schedule, double delta,
                                const std::function<double(double)>& base_sum);

double reduced_constant_product(const SpaceParams& params, const ReductionSchedule& schedule, double delta,
                                const std::function<double(double)>& base_sum);

}  // namespace detail

}  // namespace latqmc
