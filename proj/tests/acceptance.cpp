// One line per acceptance criterion; exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "latqmc/bench.hpp"
#include "latqmc/poly_construct.hpp"
#include "latqmc/wce.hpp"

using namespace latqmc;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool within_rel(double x, double ref, double tol) { return std::abs(x - ref) <= tol * std::abs(ref); }

double e_of(const ConstructionResult& r) { return std::sqrt(r.squared_error); }

ConvergenceConfig fig_config(const char* weights) {
  ConvergenceConfig cfg;
  cfg.b = 3;
  cfg.m_lo = 4;
  cfg.m_hi = 9;
  cfg.s = 100;
  cfg.weights = WeightSpec::parse(weights);
  cfg.schedule = ScheduleSpec::parse("log:2");
  cfg.algorithms = {"cbc", "scs", "rcbc", "rscs"};
  return cfg;
}

double row_e(const std::vector<ConvergenceRow>& rows, const std::string& algo, std::uint64_t N) {
  for (const auto& r : rows)
    if (r.algorithm == algo && r.N == N) return r.e;
  return NAN;
}

std::vector<ConvergenceRow> criterion_1() {
  const auto t0 = Clock::now();
  const auto rows = run_convergence(fig_config("geometric:0.2"));
  const double took = seconds_since(t0);
  const double cbc = row_e(rows, "cbc", 81), scs = row_e(rows, "scs", 81);
  const double rcbc = row_e(rows, "rcbc", 81), rscs = row_e(rows, "rscs", 81);
  const bool ok = within_rel(cbc, 0.0190098, 0.01) && within_rel(scs, 0.0191306, 0.01) &&
                  within_rel(rcbc, 0.0305866, 0.01) && within_rel(rscs, 0.0305881, 0.01) && took < 60.0;
  report(1, ok, "N=81 errors for gamma_j=0.2^j, w_j=floor(2 log3 j)",
         "cbc " + fmt("%.7g", cbc) + ", scs " + fmt("%.7g", scs) + ", rcbc " + fmt("%.7g", rcbc) + ", rscs " +
             fmt("%.7g", rscs) + "; m=4..9 in " + fmt("%.2f", took) + " s");
  return rows;
}

void criterion_4(const std::vector<ConvergenceRow>& rows) {
  const double slope = convergence_slope(rows, "cbc");
  report(4, std::abs(slope + 0.95) <= 0.10, "CBC convergence slope over m=4..9 is -0.95 +- 0.10",
         "slope " + fmt("%.4f", slope));
}

void criterion_2() {
  const auto p = SpaceParams::make(3, 4, 2.0, WeightModel::polynomial(8.0, 100));
  const double cbc = e_of(fast_cbc(p, 100));
  const double rcbc = e_of(reduced_fast_cbc(p, ReductionSchedule::log_family(3, 100, 2.0)));
  report(2, within_rel(cbc, 0.0240585, 0.01) && within_rel(rcbc, 0.0242397, 0.01),
         "N=81 errors for gamma_j=1/j^8", "cbc " + fmt("%.7g", cbc) + ", rcbc " + fmt("%.7g", rcbc));
}

void criterion_3() {
  const double cbc_ref[] = {-0.4281, -0.7065, -0.9928};
  const double rcbc_ref[] = {-0.4033, -0.685, -0.9783};
  const auto sch = ReductionSchedule::log_family(3, 100, 1.5);
  bool ok = true;
  std::string detail;
  SpectraCache cache;
  ConstructionOptions opts{nullptr, &cache, false};
  for (unsigned i = 0; i < 3; ++i) {
    const unsigned m = 6 + i;
    const auto p = SpaceParams::make(3, m, 2.0, WeightModel::geometric(0.7, 100));
    const double c = std::log10(std::sqrt(wce_product(fast_cbc(p, 100, opts).vector, p)));
    const double r = std::log10(std::sqrt(wce_product(reduced_fast_cbc(p, sch, opts).vector, p)));
    ok = ok && std::abs(c - cbc_ref[i]) <= 0.005 && std::abs(r - rcbc_ref[i]) <= 0.01;
    detail += "m=" + std::to_string(m) + ": cbc " + fmt("%.4f", c) + ", rcbc " + fmt("%.4f", r) + "; ";
  }
  const auto p6 = SpaceParams::make(3, 6, 2.0, WeightModel::geometric(0.7, 100));
  Rng rng(1);
  double best = INFINITY;
  for (int q = 0; q < 100; ++q) {
    const auto seed = random_reduced_seed(3, 6, sch, rng);
    const auto out = reduced_fast_scs(p6, sch, seed, opts).vector;
    best = std::min(best, std::log10(std::sqrt(wce_product(out, p6))));
  }
  ok = ok && best <= -0.41;
  detail += "rscs best-of-100 at m=6: " + fmt("%.4f", best);
  report(3, ok, "log10 errors for gamma_j=0.7^j, w_j=floor(1.5 log3 j)", detail);
}

struct GridCase {
  unsigned b, m, w;
};

std::vector<GridCase> full_grid() {
  std::vector<GridCase> g;
  for (unsigned b : {2u, 3u, 5u})
    for (unsigned m = 1; m <= 6; ++m)
      for (unsigned w = 0; w < m; ++w) g.push_back({b, m, w});
  return g;
}

void criterion_5() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0;
  for (const auto& c : full_grid()) {
    const auto N = ipow(c.b, c.m);
    const auto Y = ipow(c.b, c.w);
    const Vector t = omega_table(N);
    const auto rows = reduced_search_space(c.b, c.m, c.w);
    Matrix Q(static_cast<Eigen::Index>(N), 10);
    for (Eigen::Index i = 0; i < Q.size(); ++i) Q.data()[i] = U(rng);
    // dense reference, one kernel row at a time
    Matrix ref(static_cast<Eigen::Index>(rows.size()), 10);
    Eigen::RowVectorXd row(static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::uint64_t step = Y * rows[i] % N;
      std::uint64_t idx = 0;
      for (std::uint64_t k = 0; k < N; ++k, idx = (idx + step) % N) row(static_cast<Eigen::Index>(k)) = t(static_cast<Eigen::Index>(idx));
      ref.row(static_cast<Eigen::Index>(i)) = row * Q;
    }
    const auto decomp = reorder_decomposition(c.b, c.m, c.w, t);
    const ReducedOperator op(decomp);
    for (Eigen::Index j = 0; j < 10; ++j) {
      const Vector y = op.apply(Q.col(j));
      const double rel = (y - ref.col(j)).norm() / std::max(1e-300, ref.col(j).norm());
      worst = std::max(worst, rel);
    }
  }
  const double took = seconds_since(t0);
  report(5, worst <= 1e-10 && took < 30.0, "fast reduced product equals the dense product on b in {2,3,5}, m<=6, w<m",
         "max relative error " + fmt("%.2e", worst) + " in " + fmt("%.2f", took) + " s");
}

// entry of the reordered layout read from the block descriptors
double block_entry(const BlockDecomposition& d, std::size_t p, std::size_t c) {
  for (const auto& block : d.blocks) {
    if (const auto* cb = std::get_if<CirculantBlock>(&block)) {
      if (c < cb->col_offset || c >= cb->col_offset + cb->width()) continue;
      const std::size_t h = cb->size();
      const std::size_t j = (c - cb->col_offset) % h, i = p % h;
      return cb->first_row(static_cast<Eigen::Index>((j + h - i) % h));
    }
    const auto& k = std::get<ConstantBlock>(block);
    if (c >= k.col_offset && c < k.col_offset + k.cols) return k.value;
  }
  return NAN;
}

void criterion_6() {
  std::size_t mismatches = 0, entries = 0;
  for (const auto& c : full_grid()) {
    const auto N = ipow(c.b, c.m);
    const auto Y = ipow(c.b, c.w);
    const Vector t = omega_table(N);
    const auto d = reorder_decomposition(c.b, c.m, c.w, t);
    for (std::size_t p = 0; p < d.rows(); ++p) {
      for (std::size_t col = 0; col < d.cols(); ++col) {
        const double naive = t(static_cast<Eigen::Index>(d.col_perm[col] * Y % N * d.row_perm[p] % N));
        mismatches += block_entry(d, p, col) != naive;
        ++entries;
      }
    }
  }
  report(6, mismatches == 0, "block-circulant reordering reproduces the kernel matrix exactly",
         std::to_string(entries) + " entries, " + std::to_string(mismatches) + " mismatches");
}

void criterion_7() {
  const auto p = SpaceParams::make(3, 5, 2.0, WeightModel::geometric(0.7, 20));
  const auto sch = ReductionSchedule::log_family(3, 20, 1.0);
  Rng rng(7);
  int held = 0;
  double worst = -INFINITY;
  for (int i = 0; i < 200; ++i) {
    const auto rep = verify_monotonicity(p, sch, random_reduced_seed(3, 5, sch, rng));
    held += rep.output_error <= rep.seed_error + 1e-12;
    worst = std::max(worst, rep.output_error - rep.seed_error);
  }
  report(7, held == 200, "SCS output never worse than its seed (200 random seeds)",
         std::to_string(held) + "/200, max e(out)-e(seed) " + fmt("%.3e", worst));
}

void criterion_8() {
  std::size_t checked = 0, violations = 0;
  for (unsigned b : {2u, 3u}) {
    for (unsigned m = 1; m <= 8; ++m) {
      for (std::size_t s : {1u, 5u, 10u, 20u}) {
        for (const char* w : {"geometric:0.2", "geometric:0.7", "poly:3"}) {
          const auto weights = WeightSpec::parse(w).expand(s);
          const auto p = SpaceParams::make(b, m, 2.0, weights);
          for (const char* sc : {"zero", "log:1", "log:2"}) {
            const auto sch = ScheduleSpec::parse(sc).expand(b, s);
            const double bound = scs_error_bound(p, sch, 1.0);
            for (double e2 : {reduced_fast_scs(p, sch).squared_error, reduced_fast_cbc(p, sch).squared_error}) {
              violations += !(e2 <= bound);
              ++checked;
            }
            if (m <= (b == 2 ? 8u : 5u)) {
              violations += !(reduced_scs_poly(p, sch).squared_error <= scs_error_bound_poly(p, sch, 1.0));
              ++checked;
            }
          }
        }
      }
    }
  }
  report(8, violations == 0, "constructed vectors satisfy the lambda=1 bound (lattice and polynomial)",
         std::to_string(checked) + " vectors, " + std::to_string(violations) + " violations");
}

void criterion_9() {
  const auto t0 = Clock::now();
  const std::vector<std::vector<double>> settings{{1.0, 0.5}, {1.0, 1.0}, {0.2, 0.04}, {0.9, 0.1}, {0.5, 0.25}};
  bool ok = true;
  std::mt19937_64 rng(11);
  for (const auto& g : settings) {
    const auto p = SpaceParams::make(2, 5, 2.0, WeightModel::product(g));
    const auto sch = ReductionSchedule::zeros(2, 2);
    const double best = exhaustive_best(p, sch).squared_error;
    ok = ok && best <= reduced_fast_cbc(p, sch).squared_error + 1e-15;
    std::vector<GeneratingVector> seeds{GeneratingVector::ones(2, 5, sch)};
    const auto space = reduced_search_space(2, 5, 0);
    for (int i = 0; i < 10; ++i) seeds.push_back(GeneratingVector::make(2, 5, sch, {space[rng() % 16], space[rng() % 16]}));
    for (const auto& seed : seeds) {
      const double scs = reduced_fast_scs(p, sch, seed).squared_error;
      ok = ok && best <= scs + 1e-15 && scs <= wce_product(seed, p) + 1e-15;
    }
  }
  const double took = seconds_since(t0);
  report(9, ok && took < 10.0, "exhaustive minimum <= CBC and <= SCS <= seed on b=2, m=5, s=2, 5 weight settings",
         fmt("%.2f", took) + " s");
}

void criterion_10() {
  double kernel_worst = 0.0;
  bool kernel_ok = true;
  for (unsigned b : {2u, 3u}) {
    const unsigned H = b == 2 ? 14 : 9, P = b == 2 ? 12 : 7;
    const double tol = mu_b(2.0, b) * std::pow(static_cast<double>(b), -static_cast<double>(H));
    std::mt19937_64 rng(b);
    for (int i = 0; i < 50; ++i) {
      const std::uint64_t x = rng() % ipow(b, P);
      const double gap = std::abs(walsh_kernel(x, P, 2.0, b) - walsh_kernel_truncated(x, P, 2.0, b, H));
      kernel_worst = std::max(kernel_worst, gap / tol);
      kernel_ok = kernel_ok && gap <= tol;
    }
  }

  double dual_worst = 0.0;
  std::mt19937_64 rng(10);
  for (unsigned m = 1; m <= 5; ++m) {
    for (std::size_t s : {1u, 2u}) {
      const auto p = SpaceParams::make(2, m, 2.0, WeightModel::product({1.0, 0.5}));
      const auto space = poly_search_space(2, m, 0);
      std::vector<std::uint64_t> codes;
      for (std::size_t j = 0; j < s; ++j) codes.push_back(space[rng() % space.size()]);
      const auto g = PolyGeneratingVector::make(2, m, ReductionSchedule::zeros(2, s), codes);
      const double e2 = wce_walsh_product(g, p);
      dual_worst = std::max(dual_worst, std::abs(e2 - wce_walsh_dual_oracle(g, p, 12)) / e2);
    }
  }

  const auto p1 = SpaceParams::make(2, 2, 2.0, WeightModel::product({1.0}));
  const double analytic =
      wce_walsh_product(PolyGeneratingVector::make(2, 2, ReductionSchedule::zeros(2, 1), {1}), p1);
  const bool ok = kernel_ok && dual_worst <= 1e-4 && std::abs(analytic - 0.125) <= 1e-10;
  report(10, ok, "Walsh kernel, product error against the H=12 dual sum, analytic 1/8 case",
         "kernel gap/bound max " + fmt("%.3f", kernel_worst) + "; dual relative gap max " + fmt("%.2e", dual_worst) +
             " (limit 1e-4); analytic " + fmt("%.15g", analytic));
}

double median_ms(const std::function<void()>& f, int repeats) {
  std::vector<double> t;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    f();
    t.push_back(seconds_since(t0) * 1000.0);
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

void criterion_11() {
  const unsigned m = 16;
  std::vector<double> reduced;
  for (std::size_t s : {500u, 1000u, 2000u}) {
    const auto p = SpaceParams::make(2, m, 2.0, WeightModel::geometric(0.5, s));
    const auto sch = ReductionSchedule::log_family(2, s, 3.0);
    reduced.push_back(median_ms([&] { reduced_fast_scs(p, sch); }, 5));
  }
  const auto p = SpaceParams::make(2, m, 2.0, WeightModel::geometric(0.5, 2000));
  const double full = median_ms([&] { fast_scs(p, 2000); }, 3);
  const auto [lo, hi] = std::minmax_element(reduced.begin(), reduced.end());
  const bool ok = *hi / *lo <= 1.5 && full >= 10.0 * *hi;
  report(11, ok, "reduced SCS time flat in s and >= 10x faster than unreduced SCS at s=2000 (b=2, m=16)",
         "reduced ms " + fmt("%.1f", reduced[0]) + "/" + fmt("%.1f", reduced[1]) + "/" + fmt("%.1f", reduced[2]) +
             ", unreduced " + fmt("%.1f", full) + " ms");
}

void criterion_12() {
  const std::size_t s = 100;
  std::vector<double> ratio;
  std::string detail;
  for (unsigned m = 10; m <= 16; ++m) {
    const auto p = SpaceParams::make(2, m, 2.0, WeightModel::geometric(0.5, s));
    const auto sch = ReductionSchedule::log_family(2, s, 3.0);
    OpCounter ops;
    ConstructionOptions opts{&ops, nullptr, false};
    reduced_fast_scs(p, sch, opts);
    const double N = std::ldexp(1.0, static_cast<int>(m));
    const std::size_t active = std::min(s, sstar(sch, m));
    double model = m * N + static_cast<double>(active) * N;
    for (std::size_t d = 0; d < active; ++d) {
      const unsigned n = m - sch.w(d);
      model += n * std::ldexp(1.0, static_cast<int>(n));
    }
    ratio.push_back(static_cast<double>(ops.mults) / model);
  }
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  detail = "ops/model in [" + fmt("%.3f", *lo) + ", " + fmt("%.3f", *hi) + "], spread " + fmt("%.2f", *hi / *lo);
  report(12, *hi / *lo <= 20.0, "multiplication counts follow the complexity model within a factor 20 (m=10..16)",
         detail);
}

}  // namespace

int main() {
  const auto rows = criterion_1();
  criterion_2();
  criterion_3();
  criterion_4(rows);
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
