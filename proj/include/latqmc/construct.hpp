#pragma once

// Generating-vector constructions: fast (reduced) SCS and CBC, the literal
// SCS for arbitrary weights, and an exhaustive optimum for tiny instances.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latqmc/circulant.hpp"
#include "latqmc/space.hpp"

namespace latqmc {

/// Relative slack under which two candidate scores count as tied; ties go to
/// the earlier candidate in ascending order.
inline constexpr double kTieTolerance = 1e-12;

struct ConstructionOptions {
  OpCounter* ops = nullptr;
  SpectraCache* cache = nullptr;    // shared spectra; a private cache is used when null
  bool record_steps = false;
};

struct ConstructionResult {
  GeneratingVector vector;
  double squared_error = 0.0;         // from the maintained product vector
  std::vector<double> per_step_errors;
  std::uint64_t op_count = 0;
  std::size_t recomputed_steps = 0;   // steps where q_d was rebuilt instead of divided
};

/// Reduced fast SCS seeded with `seed` (effective components, which must be
/// of the form Y_j zbar_j mod N). Product weights, alpha = 2.
ConstructionResult reduced_fast_scs(const SpaceParams& params, const ReductionSchedule& schedule,
                                    std::span<const std::uint64_t> seed, const ConstructionOptions& opts = {});
ConstructionResult reduced_fast_scs(const SpaceParams& params, const ReductionSchedule& schedule,
                                    const GeneratingVector& seed, const ConstructionOptions& opts = {});
/// Default seed (Y_1, ..., Y_s).
ConstructionResult reduced_fast_scs(const SpaceParams& params, const ReductionSchedule& schedule,
                                    const ConstructionOptions& opts = {});

/// Unreduced fast SCS seeded with (1, ..., 1).
ConstructionResult fast_scs(const SpaceParams& params, std::size_t s, const ConstructionOptions& opts = {});

/// Reduced fast CBC; w == 0 gives the plain fast CBC.
ConstructionResult reduced_fast_cbc(const SpaceParams& params, const ReductionSchedule& schedule,
                                    const ConstructionOptions& opts = {});
ConstructionResult fast_cbc(const SpaceParams& params, std::size_t s, const ConstructionOptions& opts = {});

/// Literal SCS: every candidate is scored by a full error evaluation.
/// Any weight model; s <= 8 and N <= 2^10.
ConstructionResult naive_scs(const SpaceParams& params, const ReductionSchedule& schedule,
                             std::span<const std::uint64_t> seed);

/// Literal CBC with the same scoring and limits as naive_scs.
ConstructionResult naive_cbc(const SpaceParams& params, const ReductionSchedule& schedule);

struct ExhaustiveResult {
  GeneratingVector vector;
  double squared_error = 0.0;
};

/// Global minimum over the product of search spaces; s <= 3, N <= 2^7.
ExhaustiveResult exhaustive_best(const SpaceParams& params, const ReductionSchedule& schedule);

struct MonotonicityReport {
  double seed_error = 0.0;    // e (not squared)
  double output_error = 0.0;
  bool holds = true;          // output_error <= seed_error + 1e-12
  GeneratingVector output;
};

/// Runs SCS from `seed` and compares errors. A violation is reported, not thrown.
MonotonicityReport verify_monotonicity(const SpaceParams& params, const ReductionSchedule& schedule,
                                       const GeneratingVector& seed);

/// Squared error by whichever evaluator fits the weight model.
double squared_error(std::span<const std::uint64_t> effective, const SpaceParams& params);

}  // namespace latqmc
