#pragma once

// Worst-case errors of rank-1 lattice rules in the weighted Korobov space.
// All evaluators return the squared error e^2.

#include <cstdint>
#include <span>

#include "latqmc/kernel.hpp"
#include "latqmc/space.hpp"

namespace latqmc {

/// Values of e^2 at most this far below zero are rounding noise and clamp to 0.
inline constexpr double kNegativeClampTolerance = 1e-13;

/// Applies the clamp policy; sets *clamped when a tiny negative was zeroed.
/// Larger negatives indicate a bug and raise std::logic_error.
double clamp_squared_error(double e2, bool* clamped = nullptr);

/// e^2 = -1 + (1/N) sum_k prod_j (1 + gamma_j omega({k xi_j / N})), O(N s).
/// Requires product weights and alpha = 2.
double wce_product(std::span<const std::uint64_t> effective, const SpaceParams& params, bool* clamped = nullptr);
double wce_product(const GeneratingVector& z, const SpaceParams& params, bool* clamped = nullptr);

/// Same quantity for any weight model via the kernel-sum form
/// e^2 = (1/N) sum_k sum_{u != {}} gamma_u prod_{j in u} omega({k xi_j / N}).
/// Cost O(N 2^s); intended for the small-s general-weight paths.
double wce_general(std::span<const std::uint64_t> effective, const SpaceParams& params);

/// Truncated dual-lattice sum: sum over non-empty u of gamma_u times the sum of
/// prod |h_j|^-alpha over h_u in ([-H, H] \ {0})^|u| with h_u . z_u == 0 (mod N).
/// Any alpha > 1 and either weight model; non-decreasing in H.
double wce_dual_oracle(std::span<const std::uint64_t> effective, const SpaceParams& params, std::uint64_t H);

}  // namespace latqmc
