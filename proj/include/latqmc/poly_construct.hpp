#pragma once

// Reduced SCS for polynomial lattice rules (direct per-step scan) and the
// matching error bounds with mu_b in place of 2 zeta.

#include <span>

#include "latqmc/bounds.hpp"
#include "latqmc/walsh.hpp"

namespace latqmc {

struct PolyConstructionResult {
  PolyGeneratingVector vector;
  double squared_error = 0.0;
  std::vector<double> per_step_errors;
  std::size_t recomputed_steps = 0;
};

/// Seeded with effective codes of degree < m. Product weights; m <= 12.
PolyConstructionResult reduced_scs_poly(const SpaceParams& params, const ReductionSchedule& schedule,
                                        std::span<const std::uint64_t> seed);
PolyConstructionResult reduced_scs_poly(const SpaceParams& params, const ReductionSchedule& schedule,
                                        const PolyGeneratingVector& seed);
/// Default seed (x^{w_1}, ..., x^{w_s}).
PolyConstructionResult reduced_scs_poly(const SpaceParams& params, const ReductionSchedule& schedule);

double scs_error_bound_poly(const SpaceParams& params, const ReductionSchedule& schedule, double lambda);
double corollary_constant_poly(const SpaceParams& params, const ReductionSchedule& schedule, double delta,
                               ConstantMode mode);

}  // namespace latqmc
