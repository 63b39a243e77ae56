#pragma once

// Experiment drivers behind the command line: named weight and schedule
// families, single constructions, convergence, timing and error tables.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "latqmc/poly_construct.hpp"
#include "latqmc/serialize.hpp"

namespace latqmc {

inline constexpr const char* kVersion = "latqmc 0.1.0";

/// "geometric:q" (gamma_j = q^j), "poly:a" (1/j^a), "const:c", "list:g1,g2,...".
struct WeightSpec {
  std::string family = "geometric";
  double param = 0.5;
  std::vector<double> values;

  static WeightSpec parse(const std::string& text);
  WeightModel expand(std::size_t s) const;
  std::string label() const;
};

/// "log:c" (w_j = floor(c log_b j)), "zero", "list:w1,w2,...".
struct ScheduleSpec {
  std::string family = "zero";
  double param = 0.0;
  std::vector<unsigned> values;

  static ScheduleSpec parse(const std::string& text);
  ReductionSchedule expand(unsigned b, std::size_t s) const;
  std::string label() const;
};

/// cbc, rcbc, scs, rscs (lattice); scs-poly, rscs-poly (polynomial).
const std::vector<std::string>& algorithm_names();
void require_algorithm(const std::string& name);
bool is_poly_algorithm(const std::string& name);

/// mt19937_64 with an unbiased rejection draw, identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 eng_;
};

/// zbar_j drawn uniformly from Z_{N,w_j}.
GeneratingVector random_reduced_seed(unsigned b, unsigned m, const ReductionSchedule& schedule, Rng& rng);

struct RunSpec {
  unsigned b = 3;
  unsigned m = 4;
  std::size_t s = 10;
  double alpha = 2.0;
  WeightSpec weights;
  ScheduleSpec schedule;
  std::string algorithm = "rscs";
  std::optional<std::vector<std::uint64_t>> seed_z;  // zbar for SCS seeds
};

struct RunOutcome {
  std::string algorithm;
  SpaceParams params;
  ReductionSchedule schedule;  // the one actually used (zero for unreduced)
  bool poly = false;
  GeneratingVector vector;
  PolyGeneratingVector poly_vector;
  std::vector<std::uint64_t> seed_effective;
  double squared_error = 0.0;  // recomputed by an evaluator independent of the construction
  double wall_time_ms = 0.0;
  std::uint64_t op_count = 0;
};

/// One construction. With evaluate = false the error is not computed.
RunOutcome run_one(const RunSpec& spec, bool evaluate = true, SpectraCache* cache = nullptr);

/// Result JSON: vector fields plus algorithm, seed_vector, squared_error,
/// wall_time_ms, op_count and a provenance block.
Json outcome_to_json(const RunOutcome& out, const RunSpec& spec);

/// Squared error of a loaded vector file (lattice or polynomial).
double evaluate_json_vector(const Json& j);

struct ConvergenceConfig {
  unsigned b = 3;
  unsigned m_lo = 4, m_hi = 9;
  std::size_t s = 100;
  double alpha = 2.0;
  WeightSpec weights;
  ScheduleSpec schedule;
  std::vector<std::string> algorithms;
};

struct ConvergenceRow {
  std::string algorithm;
  std::uint64_t N = 0;
  double e = 0.0;
  double wall_time_ms = 0.0;
};

std::vector<ConvergenceRow> run_convergence(const ConvergenceConfig& cfg);

struct TimingConfig {
  unsigned b = 2;
  std::vector<unsigned> ms;
  std::vector<std::size_t> dims;
  double alpha = 2.0;
  WeightSpec weights;
  ScheduleSpec schedule;
  std::vector<std::string> algorithms;
  unsigned repeats = 3;
};

struct TimingRow {
  std::string algorithm;
  unsigned m = 0;
  std::size_t s = 0;
  std::size_t sstar = 0;
  double wall_time_s = 0.0;
};

/// Construction only (no error evaluation); median of `repeats` runs per cell.
std::vector<TimingRow> run_timing(const TimingConfig& cfg);

struct ErrorTableConfig {
  unsigned b = 3;
  std::vector<unsigned> ms;
  std::size_t s = 100;
  double alpha = 2.0;
  std::vector<WeightSpec> weights;
  ScheduleSpec schedule;
  std::size_t seeds = 100;
  std::uint64_t rng_seed = 1;
  unsigned max_iterations = 10;
};

struct ErrorTableRow {
  std::string weights;
  unsigned m = 0;
  std::string algorithm;  // cbc, rcbc, rscs-single, rscs-multi
  double log10_e = 0.0;
  bool fixed_point = true;  // rscs-multi: every seed reached a fixed point
};

std::vector<ErrorTableRow> run_error_table(const ErrorTableConfig& cfg);

std::string to_csv(const std::vector<ConvergenceRow>& rows);
std::string to_csv(const std::vector<TimingRow>& rows);
std::string to_csv(const std::vector<ErrorTableRow>& rows);

/// Least-squares slope of log e against log N.
double convergence_slope(const std::vector<ConvergenceRow>& rows, const std::string& algorithm);

/// Number with 15 significant digits.
std::string fmt15(double x);

}  // namespace latqmc
