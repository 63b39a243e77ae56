#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "latqmc/bounds.hpp"
#include "latqmc/points.hpp"
#include "latqmc/wce.hpp"

using namespace latqmc;

namespace {

constexpr double pi = std::numbers::pi;

std::uint64_t brute_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// floor(p/q * log_b j) from b^(k q) <= j^p in 128-bit integers
unsigned floor_log_oracle(unsigned p, unsigned q, unsigned b, std::uint64_t j) {
  using u128 = unsigned __int128;
  u128 jp = 1;
  for (unsigned i = 0; i < p; ++i) jp *= j;
  unsigned k = 0;
  for (;;) {
    u128 bk = 1;
    for (unsigned i = 0; i < (k + 1) * q; ++i) bk *= b;
    if (bk > jp) return k;
    ++k;
  }
}

}  // namespace

TEST_CASE("search space examples") {
  CHECK(reduced_search_space(3, 4, 1).size() == 18);
  CHECK(reduced_search_space(2, 3, 3) == std::vector<std::uint64_t>{1});
  CHECK(reduced_search_space(2, 3, 0) == std::vector<std::uint64_t>{1, 3, 5, 7});
}

TEST_CASE("search space cardinality matches the unit count") {
  for (unsigned b : {2u, 3u, 5u}) {
    for (unsigned m = 1; m <= 8; ++m) {
      if (ipow(b, m) > 400000) continue;
      for (unsigned w = 0; w < m; ++w) {
        const auto z = reduced_search_space(b, m, w);
        const std::uint64_t top = ipow(b, m - w);
        std::uint64_t count = 0;
        for (std::uint64_t x = 1; x < top; ++x) count += brute_gcd(x, b) == 1;
        CHECK(z.size() == count);
        CHECK(z.size() == (b - 1) * ipow(b, m - w - 1));
        CHECK(reduced_search_space_size(b, m, w) == z.size());
        CHECK(std::is_sorted(z.begin(), z.end()));
      }
    }
  }
}

TEST_CASE("sstar") {
  CHECK(sstar(ReductionSchedule::log_family(2, 300, 1.5), 10) == 101);
  CHECK(sstar(ReductionSchedule::log_family(2, 300, 3.0), 10) == 10);
  CHECK(sstar(ReductionSchedule::log_family(2, 300, 3.0), 20) == 101);
  CHECK(sstar(ReductionSchedule::zeros(2, 50), 1) == 50);
  CHECK(sstar(ReductionSchedule(2, {3, 3}), 3) == 0);
}

TEST_CASE("log schedule is exact against integer powers") {
  const std::pair<unsigned, unsigned> cs[] = {{3, 2}, {2, 1}, {7, 2}, {3, 1}, {5, 2}};
  for (unsigned b : {2u, 3u}) {
    for (auto [p, q] : cs) {
      const double c = static_cast<double>(p) / q;
      for (std::uint64_t j = 1; j <= 2000; ++j) {
        REQUIRE(floor_c_log(c, b, j) == floor_log_oracle(p, q, b, j));
      }
    }
  }
}

TEST_CASE("schedule and vector validation") {
  CHECK_THROWS_AS(ReductionSchedule(2, {1, 0}), ValidationError);
  const ReductionSchedule sch(3, {0, 1, 4});
  CHECK(sch.multiplier(1) == 3);
  const auto v = GeneratingVector::make(3, 4, sch, {5, 2, 1});
  CHECK(v.effective == std::vector<std::uint64_t>{5, 6, 0});
  CHECK_THROWS_AS(GeneratingVector::make(3, 4, sch, {3, 2, 1}), ValidationError);   // not a unit
  CHECK_THROWS_AS(GeneratingVector::make(3, 4, sch, {5, 28, 1}), ValidationError);  // above b^{m-w}
  CHECK_THROWS_AS(GeneratingVector::make(3, 4, sch, {5, 2, 2}), ValidationError);   // beyond s*
  CHECK(is_reduced_form(v.effective, sch, 4));
  const std::vector<std::uint64_t> bad{5, 7, 0};
  CHECK_FALSE(is_reduced_form(bad, sch, 4));
  CHECK_THROWS_AS(SpaceParams::make(4, 3, 2.0, WeightModel::product({1.0})), ValidationError);
  CHECK_THROWS_AS(SpaceParams::make(2, 3, 1.0, WeightModel::product({1.0})), ValidationError);
  CHECK_THROWS_AS(WeightModel::product({-0.1}), ValidationError);
  CHECK_THROWS_AS(WeightModel::general({{0u, 1.0}}), ValidationError);
}

TEST_CASE("omega values and symmetry") {
  CHECK(omega(0.0) == doctest::Approx(pi * pi / 3).epsilon(1e-15));
  CHECK(omega(0.5) == doctest::Approx(-pi * pi / 6).epsilon(1e-15));
  CHECK(omega(0.25) == omega(0.75));
  CHECK_THROWS_AS(omega(0.25, 3.0), ValidationError);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = U(rng);
    const double a = omega(x), b = omega(1.0 - x);
    REQUIRE(std::abs(a - b) <= 1e-13);  // 1 - x itself rounds
  }
  const Vector t = omega_table(81);
  for (int k = 1; k < 81; ++k) REQUIRE(t(k) == t(81 - k));
}

TEST_CASE("wce_product matches the dual-lattice series in one dimension") {
  const auto sp = SpaceParams::make(2, 2, 2.0, WeightModel::product({1.0}));
  const std::vector<std::uint64_t> z{1};
  // sum over nonzero multiples of 4 of h^-2, summed directly
  double series = 0.0;
  for (std::uint64_t h = 10000000; h >= 1; --h) series += 2.0 / (16.0 * static_cast<double>(h) * h);
  CHECK(wce_product(z, sp) == doctest::Approx(series).epsilon(1e-6));
  CHECK(wce_product(z, sp) == doctest::Approx(pi * pi / 48).epsilon(1e-14));
}

TEST_CASE("zero weights give zero error") {
  const auto sp = SpaceParams::make(3, 3, 2.0, WeightModel::product({0.0, 0.0, 0.0}));
  const std::vector<std::uint64_t> z{1, 5, 7};
  CHECK(wce_product(z, sp) == 0.0);
  CHECK(wce_general(z, sp) == 0.0);
  const auto gp = SpaceParams::make(3, 3, 2.0, WeightModel::general({{3u, 0.0}}));
  CHECK(wce_dual_oracle(std::vector<std::uint64_t>{1, 5}, gp, 50) == 0.0);
}

TEST_CASE("one-dimensional permutation invariance") {
  for (unsigned b : {2u, 3u, 5u}) {
    const auto sp = SpaceParams::make(b, 3, 2.0, WeightModel::product({0.7}));
    const double ref = wce_product(std::vector<std::uint64_t>{1}, sp);
    for (std::uint64_t z : reduced_search_space(b, 3, 0)) {
      CHECK(wce_product(std::vector<std::uint64_t>{z}, sp) == doctest::Approx(ref).epsilon(1e-14));
    }
  }
}

TEST_CASE("wce_general equals wce_product for product weights") {
  const auto sp = SpaceParams::make(3, 3, 2.0, WeightModel::product({0.9, 0.5, 0.3}));
  const std::vector<std::uint64_t> z{1, 10, 22};
  CHECK(wce_general(z, sp) == doctest::Approx(wce_product(z, sp)).epsilon(1e-13));
}

TEST_CASE("clamp policy") {
  bool clamped = false;
  CHECK(clamp_squared_error(-1e-14, &clamped) == 0.0);
  CHECK(clamped);
  CHECK(clamp_squared_error(0.25, &clamped) == 0.25);
  CHECK_FALSE(clamped);
  CHECK_THROWS_AS(clamp_squared_error(-1e-6), std::logic_error);
}

TEST_CASE("dual oracle approaches the closed form from below") {
  for (unsigned m : {3u, 4u, 5u, 6u}) {
    const auto sp = SpaceParams::make(2, m, 2.0, WeightModel::product({1.0, 0.5}));
    for (std::uint64_t z2 : {1ull, 3ull, 5ull}) {
      const std::vector<std::uint64_t> z{1, z2};
      const double closed = wce_product(z, sp);
      double prev = 0.0;
      for (std::uint64_t H : {50ull, 100ull, 200ull, 400ull}) {
        const double o = wce_dual_oracle(z, sp, H);
        CHECK(o >= prev);
        CHECK(o <= closed * (1 + 1e-12));
        prev = o;
      }
      // tail ~ 1/H: the gap halves when H doubles
      const double g1 = closed - wce_dual_oracle(z, sp, 200);
      const double g2 = closed - wce_dual_oracle(z, sp, 400);
      CHECK(g2 < 0.6 * g1);
    }
  }
}

TEST_CASE("dual oracle at H = 2000 against the closed form") {
  const auto sp = SpaceParams::make(2, 3, 2.0, WeightModel::product({1.0, 0.5}));
  const std::vector<std::uint64_t> z{1, 3};
  const double closed = wce_product(z, sp);
  const double o1 = wce_dual_oracle(z, sp, 2000);
  const double o2 = wce_dual_oracle(z, sp, 4000);
  // plain truncation leaves a 1/H tail of relative size ~ 6N/(pi^2 H)
  CHECK((closed - o2) / closed < 6.0 * 8 / (pi * pi * 4000));
  // removing the leading 1/H term recovers the closed form
  CHECK(2 * o2 - o1 == doctest::Approx(closed).epsilon(1e-4));
}

TEST_CASE("dual oracle handles general weights and other alpha") {
  const auto gp = SpaceParams::make(2, 3, 2.0, WeightModel::general({{1u, 0.8}, {3u, 0.3}}));
  const std::vector<std::uint64_t> z{1, 3};
  const double o = wce_dual_oracle(z, gp, 4000);
  const double o1 = wce_dual_oracle(z, gp, 2000);
  CHECK(2 * o - o1 == doctest::Approx(wce_general(z, gp)).epsilon(1e-4));
  const auto a3 = SpaceParams::make(2, 2, 3.0, WeightModel::product({1.0}));
  // 2 sum_{h>=1} (4h)^-3 = 2 zeta(3) / 64
  CHECK(wce_dual_oracle(std::vector<std::uint64_t>{1}, a3, 100000) == doctest::Approx(2 * zeta(3.0) / 64).epsilon(1e-8));
  CHECK_THROWS_AS(wce_dual_oracle(std::vector<std::uint64_t>(9, 1), gp, 10), ScaleGuardError);
}

TEST_CASE("scs_error_bound examples") {
  auto p1 = SpaceParams::make(2, 3, 2.0, WeightModel::product({1.0}));
  CHECK(scs_error_bound(p1, ReductionSchedule::zeros(2, 1), 1.0) == doctest::Approx(pi * pi / 12).epsilon(1e-14));
  CHECK(scs_error_bound(p1, ReductionSchedule(2, {5}), 1.0) == doctest::Approx(pi * pi / 12 * 8).epsilon(1e-14));
  CHECK_THROWS_AS(scs_error_bound(p1, ReductionSchedule::zeros(2, 1), 0.5), ValidationError);

  // s = 2, gamma = 1/2, w = 0, m = 4: enumerate the subsets {1}, {2}, {1,2}
  auto p2 = SpaceParams::make(2, 4, 2.0, WeightModel::product({0.5, 0.5}));
  const double c = 2 * zeta(2.0);
  const double brute = (2 * 0.5 * c + 2 * 0.5 * c + 2 * 2 * 0.25 * c * c) / 16.0;
  CHECK(scs_error_bound(p2, ReductionSchedule::zeros(2, 2), 1.0) == doctest::Approx(brute).epsilon(1e-14));
}

TEST_CASE("product bound equals subset enumeration") {
  auto prod = SpaceParams::make(3, 4, 2.0, WeightModel::product({0.9, 0.4, 0.2}));
  auto gen = prod;
  gen.weights = prod.weights.to_general(3);
  const ReductionSchedule sch(3, {0, 1, 2});
  for (double lambda : {0.6, 0.8, 1.0}) {
    CHECK(scs_error_bound(prod, sch, lambda) == doctest::Approx(scs_error_bound(gen, sch, lambda)).epsilon(1e-12));
  }
}

TEST_CASE("corollary constants") {
  auto p1 = SpaceParams::make(2, 3, 2.0, WeightModel::product({1.0}));
  const double expect = std::sqrt(2 * 2 * zeta(2.0));
  CHECK(corollary_constant(p1, ReductionSchedule::zeros(2, 1), 0.5, ConstantMode::general) ==
        doctest::Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(corollary_constant(p1, ReductionSchedule::zeros(2, 1), 0.6, ConstantMode::general), ValidationError);

  auto tiny = SpaceParams::make(2, 3, 2.0, WeightModel::product({1e-30, 1e-30, 1e-30}));
  const double c_tiny = corollary_constant(tiny, ReductionSchedule::zeros(2, 3), 0.25, ConstantMode::product);
  CHECK(c_tiny < 1e-12);
  CHECK(c_tiny > 0.0);

  // the two forms agree for equal weights; the product form dominates for decreasing ones
  auto eq = SpaceParams::make(3, 3, 2.0, WeightModel::product({0.5, 0.5, 0.5}));
  const ReductionSchedule sch(3, {0, 1, 1});
  CHECK(corollary_constant(eq, sch, 0.25, ConstantMode::product) ==
        doctest::Approx(corollary_constant(eq, sch, 0.25, ConstantMode::general)).epsilon(1e-12));
  auto dec = SpaceParams::make(3, 3, 2.0, WeightModel::product({0.9, 0.4, 0.1}));
  CHECK(corollary_constant(dec, sch, 0.25, ConstantMode::product) >=
        corollary_constant(dec, sch, 0.25, ConstantMode::general));
}

TEST_CASE("lattice points and tent transform") {
  const auto v1 = GeneratingVector::unreduced(2, 2, {1});
  const Matrix p = lattice_points(v1);
  CHECK(p(0, 0) == 0.0);
  CHECK(p(1, 0) == 0.25);
  CHECK(p(2, 0) == 0.5);
  CHECK(p(3, 0) == 0.75);
  CHECK(tent(0.25) == 0.5);
  CHECK(tent(0.5) == 1.0);
  CHECK(tent(0.0) == 0.0);
  const Matrix q = lattice_points(GeneratingVector::unreduced(2, 3, {1, 3}));
  CHECK(q(5, 0) == 5.0 / 8);
  CHECK(q(5, 1) == 7.0 / 8);
  const Matrix t = lattice_points(GeneratingVector::unreduced(2, 3, {1, 3}), true);
  CHECK(t(5, 1) == tent(7.0 / 8));
}

TEST_CASE("sobolev weight map") {
  const auto w = sobolev_weight_map(WeightModel::product({1.0, 1.0}), 2 * pi * pi);
  CHECK(w.gamma(1) == doctest::Approx(2 * pi * pi));
  const auto id = sobolev_weight_map(WeightModel::product({0.3}), 1.0);
  CHECK(id.gamma(1) == 0.3);
  const auto g = sobolev_weight_map(WeightModel::general({{3u, 0.5}}), pi * pi);
  CHECK(g.gamma_subset(3u) == doctest::Approx(0.5 * std::pow(pi, 4)));
}
