#pragma once

// Domain types shared by every construction: weights, the space parameters,
// reduction schedules and (reduced) generating vectors.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "latqmc/arith.hpp"

namespace latqmc {

/// Subsets u of {1, ..., s} are bitmasks; coordinate j (1-based) is bit j-1.
using SubsetMask = std::uint32_t;
inline constexpr unsigned kMaxGeneralDim = 20;

struct ProductWeights {
  std::vector<double> gammas;  // gammas[j-1] is gamma_j
};

struct GeneralWeights {
  std::map<SubsetMask, double> terms;  // subsets not listed carry weight 0
};

class WeightModel {
 public:
  WeightModel() = default;
  WeightModel(ProductWeights w);  // NOLINT: implicit from alternatives is intended
  WeightModel(GeneralWeights w);  // NOLINT

  static WeightModel product(std::vector<double> gammas) { return WeightModel(ProductWeights{std::move(gammas)}); }
  static WeightModel general(std::map<SubsetMask, double> terms) { return WeightModel(GeneralWeights{std::move(terms)}); }
  /// gamma_j = q^j.
  static WeightModel geometric(double q, std::size_t s);
  /// gamma_j = 1 / j^a.
  static WeightModel polynomial(double a, std::size_t s);

  bool is_product() const { return std::holds_alternative<ProductWeights>(model_); }
  const ProductWeights& as_product() const;
  const GeneralWeights& as_general() const;

  /// gamma_j for product weights (1-based j).
  double gamma(std::size_t j) const;
  /// gamma_u for either model; the empty set has weight 1.
  double gamma_subset(SubsetMask u) const;

  /// Throws unless the model covers dimension s (product list long enough,
  /// general masks inside [s] and s <= kMaxGeneralDim).
  void require_dimension(std::size_t s) const;

  /// Equivalent general model on [s] (enumerates 2^s - 1 subsets).
  WeightModel to_general(std::size_t s) const;

 private:
  std::variant<ProductWeights, GeneralWeights> model_{ProductWeights{}};
};

/// Scales gamma_u by c^|u| (product case: gamma_j by c).
WeightModel sobolev_weight_map(const WeightModel& weights, double c);

struct SpaceParams {
  unsigned b = 2;
  unsigned m = 1;
  std::uint64_t N = 2;
  double alpha = 2.0;
  WeightModel weights;

  static SpaceParams make(unsigned b, unsigned m, double alpha, WeightModel weights);
};

/// Non-decreasing reduction indices w_1 <= ... <= w_s with multipliers Y_j = b^{w_j}.
class ReductionSchedule {
 public:
  ReductionSchedule() = default;
  ReductionSchedule(unsigned b, std::vector<unsigned> w);

  static ReductionSchedule zeros(unsigned b, std::size_t s);
  /// w_j = floor(c * log_b j), computed exactly for decimal c.
  static ReductionSchedule log_family(unsigned b, std::size_t s, double c);

  unsigned base() const { return b_; }
  std::size_t size() const { return w_.size(); }
  unsigned w(std::size_t j) const { return w_.at(j); }  // 0-based
  const std::vector<unsigned>& values() const { return w_; }

  /// Y_j = b^{w_j}; throws on 64-bit overflow.
  std::uint64_t multiplier(std::size_t j) const;
  /// Y_j mod b^m.
  std::uint64_t multiplier_mod(std::size_t j, unsigned m) const;

 private:
  unsigned b_ = 2;
  std::vector<unsigned> w_;
};

/// Exact floor(c * log_b j) for j >= 1.
unsigned floor_c_log(double c, unsigned b, std::uint64_t j);

/// Largest 1-based j with w_j < m, or 0 if there is none.
std::size_t sstar(const ReductionSchedule& schedule, unsigned m);

/// Z_{N,w}: units of Z_{b^{m-w}} in ascending order, or {1} when w >= m.
std::vector<std::uint64_t> reduced_search_space(unsigned b, unsigned m, unsigned w);

/// Size of Z_{N,w} without enumerating it.
std::uint64_t reduced_search_space_size(unsigned b, unsigned m, unsigned w);

/// Rank-1 lattice generating vector (Y_1 z_1, ..., Y_s z_s) with the
/// effective components already reduced modulo N.
struct GeneratingVector {
  unsigned b = 2;
  unsigned m = 1;
  std::vector<unsigned> w;
  std::vector<std::uint64_t> z;
  std::vector<std::uint64_t> effective;

  std::size_t s() const { return z.size(); }
  std::uint64_t N() const { return ipow(b, m); }

  /// Validates z_j in Z_{N,w_j} (z_j = 1 when w_j >= m).
  static GeneratingVector make(unsigned b, unsigned m, const ReductionSchedule& schedule,
                               std::vector<std::uint64_t> z);
  /// Plain vector with w == 0; components are only reduced modulo N.
  static GeneratingVector unreduced(unsigned b, unsigned m, std::vector<std::uint64_t> z);
  /// Default seed (Y_1, ..., Y_s), i.e. every z_j = 1.
  static GeneratingVector ones(unsigned b, unsigned m, const ReductionSchedule& schedule);
};

/// True if seed_j == Y_j * zbar_j mod N with zbar_j in Z_{N,w_j} for every j.
bool is_reduced_form(std::span<const std::uint64_t> seed, const ReductionSchedule& schedule, unsigned m);

}  // namespace latqmc
