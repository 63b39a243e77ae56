#include "latqmc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "latqmc/wce.hpp"

namespace latqmc {

namespace {

using Clock = std::chrono::steady_clock;

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("cannot parse " + what + " value '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::pair<std::string, std::string> family_and_param(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {text, ""};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool reduced_algorithm(const std::string& a) { return a == "rcbc" || a == "rscs" || a == "rscs-poly"; }

// s* of the schedule family itself, independent of the run dimension
std::size_t family_sstar(const ScheduleSpec& spec, unsigned b, unsigned m, std::size_t s) {
  if (spec.family == "zero") return s;
  if (spec.family == "list") return sstar(spec.expand(b, spec.values.size()), m);
  std::uint64_t hi = 1;
  while (floor_c_log(spec.param, b, hi) < m) hi *= 2;
  std::uint64_t lo = hi / 2;  // w_lo < m <= w_hi (lo = 0 if w_1 >= m)
  if (hi == 1) return 0;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (floor_c_log(spec.param, b, mid) < m ? lo : hi) = mid;
  }
  return static_cast<std::size_t>(lo);
}

}  // namespace

std::string fmt15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

WeightSpec WeightSpec::parse(const std::string& text) {
  auto [fam, par] = family_and_param(text);
  WeightSpec w;
  if (fam == "geometric" || fam == "poly" || fam == "const") {
    w.family = fam;
    w.param = parse_number(par, "weight parameter");
    if (fam == "geometric" && !(w.param > 0.0 && w.param < 1.0)) throw ValidationError("geometric weights need 0 < q < 1");
    if (fam == "poly" && !(w.param > 0.0)) throw ValidationError("polynomial weights need a > 0");
    if (fam == "const" && !(w.param >= 0.0)) throw ValidationError("constant weights must be non-negative");
    return w;
  }
  w.family = "list";
  if (fam == "list") {
    for (const auto& v : split(par, ',')) w.values.push_back(parse_number(v, "weight"));
  } else if (std::filesystem::exists(text)) {
    const Json j = read_json_file(text);
    const WeightModel model = j.is_array() ? WeightModel::product(j.get<std::vector<double>>()) : weights_from_json(j);
    if (!model.is_product()) throw ValidationError("weight files for experiments must hold product weights");
    w.values = model.as_product().gammas;
  } else {
    throw ValidationError("unknown weight family '" + fam + "' (geometric:q, poly:a, const:c, list:..., or a file)");
  }
  WeightModel::product(w.values);  // validates
  return w;
}

WeightModel WeightSpec::expand(std::size_t s) const {
  if (family == "geometric") return WeightModel::geometric(param, s);
  if (family == "poly") return WeightModel::polynomial(param, s);
  if (family == "const") return WeightModel::product(std::vector<double>(s, param));
  if (values.size() < s) throw ValidationError("explicit weight list shorter than the dimension");
  return WeightModel::product(std::vector<double>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(s)));
}

std::string WeightSpec::label() const {
  if (family == "list") return "list[" + std::to_string(values.size()) + "]";
  return family + ":" + fmt15(param);
}

ScheduleSpec ScheduleSpec::parse(const std::string& text) {
  auto [fam, par] = family_and_param(text);
  ScheduleSpec sc;
  if (fam == "zero") {
    sc.family = "zero";
    return sc;
  }
  if (fam == "log") {
    sc.family = "log";
    sc.param = parse_number(par, "schedule parameter");
    if (!(sc.param > 0.0)) throw ValidationError("log schedule needs c > 0");
    return sc;
  }
  sc.family = "list";
  std::vector<long long> raw;
  if (fam == "list") {
    for (const auto& v : split(par, ',')) {
      const double x = parse_number(v, "schedule entry");
      if (x < 0 || x != std::floor(x)) throw ValidationError("schedule entries must be non-negative integers");
      raw.push_back(static_cast<long long>(x));
    }
  } else if (std::filesystem::exists(text)) {
    raw = read_json_file(text).get<std::vector<long long>>();
  } else {
    throw ValidationError("unknown schedule family '" + fam + "' (zero, log:c, list:..., or a file)");
  }
  for (auto v : raw) {
    if (v < 0) throw ValidationError("schedule entries must be non-negative");
    sc.values.push_back(static_cast<unsigned>(v));
  }
  if (!std::is_sorted(sc.values.begin(), sc.values.end())) throw ValidationError("schedule must be non-decreasing");
  return sc;
}

ReductionSchedule ScheduleSpec::expand(unsigned b, std::size_t s) const {
  if (family == "zero") return ReductionSchedule::zeros(b, s);
  if (family == "log") return ReductionSchedule::log_family(b, s, param);
  if (values.size() < s) throw ValidationError("explicit schedule shorter than the dimension");
  return ReductionSchedule(b, std::vector<unsigned>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(s)));
}

std::string ScheduleSpec::label() const {
  if (family == "zero") return "zero";
  if (family == "log") return "log:" + fmt15(param);
  return "list[" + std::to_string(values.size()) + "]";
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"cbc", "rcbc", "scs", "rscs", "scs-poly", "rscs-poly"};
  return names;
}

void require_algorithm(const std::string& name) {
  const auto& n = algorithm_names();
  if (std::find(n.begin(), n.end(), name) == n.end()) {
    throw ValidationError("unknown algorithm '" + name + "' (cbc, rcbc, scs, rscs, scs-poly, rscs-poly)");
  }
}

bool is_poly_algorithm(const std::string& name) { return name == "scs-poly" || name == "rscs-poly"; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ValidationError("empty range");
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t x = eng_();
    if (x >= threshold) return x % n;
  }
}

GeneratingVector random_reduced_seed(unsigned b, unsigned m, const ReductionSchedule& schedule, Rng& rng) {
  std::vector<std::uint64_t> z(schedule.size(), 1);
  for (std::size_t j = 0; j < z.size(); ++j) {
    const unsigned w = schedule.w(j);
    if (w < m) z[j] = unit_at(rng.below(reduced_search_space_size(b, m, w)), b);
  }
  return GeneratingVector::make(b, m, schedule, z);
}

RunOutcome run_one(const RunSpec& spec, bool evaluate, SpectraCache* cache) {
  require_algorithm(spec.algorithm);
  RunOutcome out;
  out.algorithm = spec.algorithm;
  out.params = SpaceParams::make(spec.b, spec.m, spec.alpha, spec.weights.expand(spec.s));
  out.schedule = reduced_algorithm(spec.algorithm) ? spec.schedule.expand(spec.b, spec.s)
                                                   : ReductionSchedule::zeros(spec.b, spec.s);
  out.poly = is_poly_algorithm(spec.algorithm);
  const auto& a = spec.algorithm;
  OpCounter ops;
  ConstructionOptions opts{&ops, cache, false};

  if (out.poly) {
    const auto seed = spec.seed_z ? PolyGeneratingVector::make(spec.b, spec.m, out.schedule, *spec.seed_z)
                                  : PolyGeneratingVector::ones(spec.b, spec.m, out.schedule);
    out.seed_effective = seed.effective;
    const auto t0 = Clock::now();
    auto res = reduced_scs_poly(out.params, out.schedule, seed);
    out.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    out.poly_vector = std::move(res.vector);
    if (evaluate) out.squared_error = wce_walsh_product(out.poly_vector, out.params);
    return out;
  }

  ConstructionResult res;
  const auto t0 = Clock::now();
  if (a == "cbc" || a == "rcbc") {
    if (spec.seed_z) throw ValidationError("CBC constructions take no seed vector");
    res = reduced_fast_cbc(out.params, out.schedule, opts);
  } else {
    const auto seed = spec.seed_z ? GeneratingVector::make(spec.b, spec.m, out.schedule, *spec.seed_z)
                                  : GeneratingVector::ones(spec.b, spec.m, out.schedule);
    out.seed_effective = seed.effective;
    res = reduced_fast_scs(out.params, out.schedule, seed, opts);
  }
  out.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  out.vector = std::move(res.vector);
  out.op_count = ops.mults;
  if (evaluate) out.squared_error = squared_error(out.vector.effective, out.params);
  return out;
}

Json outcome_to_json(const RunOutcome& out, const RunSpec& spec) {
  Json j = out.poly ? poly_vector_to_json(out.poly_vector, out.params) : vector_to_json(out.vector, out.params);
  j["algorithm"] = out.algorithm;
  j["seed_vector"] = out.seed_effective.empty() ? Json(nullptr) : Json(out.seed_effective);
  j["squared_error"] = out.squared_error;
  j["wall_time_ms"] = out.wall_time_ms;
  j["op_count"] = out.op_count;
  j["provenance"] = Json{{"version", kVersion},
                         {"weights", spec.weights.label()},
                         {"schedule", spec.schedule.label()},
                         {"seed", spec.seed_z ? Json(*spec.seed_z) : Json("ones")}};
  return j;
}

double evaluate_json_vector(const Json& j) {
  if (is_poly_json(j)) {
    const auto v = poly_vector_from_json(j);
    return wce_walsh_product(v.vector, v.params);
  }
  const auto v = vector_from_json(j);
  return squared_error(v.vector.effective, v.params);
}

std::vector<ConvergenceRow> run_convergence(const ConvergenceConfig& cfg) {
  for (const auto& a : cfg.algorithms) require_algorithm(a);
  if (cfg.m_lo < 1 || cfg.m_hi < cfg.m_lo) throw ValidationError("m range must satisfy 1 <= lo <= hi");
  std::vector<ConvergenceRow> rows;
  SpectraCache cache;
  for (unsigned m = cfg.m_lo; m <= cfg.m_hi; ++m) {
    for (const auto& a : cfg.algorithms) {
      RunSpec spec{cfg.b, m, cfg.s, cfg.alpha, cfg.weights, cfg.schedule, a, std::nullopt};
      const auto out = run_one(spec, true, &cache);
      rows.push_back({a, out.params.N, std::sqrt(out.squared_error), out.wall_time_ms});
    }
  }
  return rows;
}

std::vector<TimingRow> run_timing(const TimingConfig& cfg) {
  for (const auto& a : cfg.algorithms) require_algorithm(a);
  if (cfg.repeats < 1) throw ValidationError("repeats must be >= 1");
  std::vector<TimingRow> rows;
  for (unsigned m : cfg.ms) {
    for (std::size_t s : cfg.dims) {
      for (const auto& a : cfg.algorithms) {
        RunSpec spec{cfg.b, m, s, cfg.alpha, cfg.weights, cfg.schedule, a, std::nullopt};
        std::vector<double> t;
        for (unsigned r = 0; r < cfg.repeats; ++r) t.push_back(run_one(spec, false).wall_time_ms / 1000.0);
        const std::size_t ss = reduced_algorithm(a) ? family_sstar(cfg.schedule, cfg.b, m, s) : s;
        rows.push_back({a, m, s, ss, median(t)});
      }
    }
  }
  return rows;
}

std::vector<ErrorTableRow> run_error_table(const ErrorTableConfig& cfg) {
  if (cfg.seeds < 1) throw ValidationError("seed count must be >= 1");
  if (cfg.max_iterations < 1) throw ValidationError("iteration cap must be >= 1");
  std::vector<ErrorTableRow> rows;
  SpectraCache cache;
  for (const auto& ws : cfg.weights) {
    for (unsigned m : cfg.ms) {
      const SpaceParams params = SpaceParams::make(cfg.b, m, cfg.alpha, ws.expand(cfg.s));
      const ReductionSchedule sched = cfg.schedule.expand(cfg.b, cfg.s);
      const ConstructionOptions opts{nullptr, &cache, false};
      auto log_e = [&](const GeneratingVector& v) { return std::log10(std::sqrt(wce_product(v, params))); };

      rows.push_back({ws.label(), m, "cbc", log_e(fast_cbc(params, cfg.s, opts).vector), true});
      rows.push_back({ws.label(), m, "rcbc", log_e(reduced_fast_cbc(params, sched, opts).vector), true});

      Rng rng(cfg.rng_seed);
      double best_single = INFINITY, best_multi = INFINITY;
      bool all_fixed = true;
      for (std::size_t q = 0; q < cfg.seeds; ++q) {
        const GeneratingVector seed = random_reduced_seed(cfg.b, m, sched, rng);
        GeneratingVector cur = reduced_fast_scs(params, sched, seed, opts).vector;
        best_single = std::min(best_single, log_e(cur));
        bool fixed = false;
        for (unsigned it = 1; it < cfg.max_iterations; ++it) {
          GeneratingVector next = reduced_fast_scs(params, sched, cur, opts).vector;
          fixed = next.z == cur.z;
          cur = std::move(next);
          if (fixed) break;
        }
        all_fixed = all_fixed && fixed;
        best_multi = std::min(best_multi, log_e(cur));
      }
      rows.push_back({ws.label(), m, "rscs-single", best_single, true});
      rows.push_back({ws.label(), m, "rscs-multi", best_multi, all_fixed});
    }
  }
  return rows;
}

std::string to_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "algorithm,N,e,wall_time_ms\n";
  for (const auto& r : rows) {
    out += r.algorithm + "," + std::to_string(r.N) + "," + fmt15(r.e) + "," + fmt15(r.wall_time_ms) + "\n";
  }
  return out;
}

std::string to_csv(const std::vector<TimingRow>& rows) {
  std::string out = "algorithm,m,s,s_star,wall_time_s\n";
  for (const auto& r : rows) {
    out += r.algorithm + "," + std::to_string(r.m) + "," + std::to_string(r.s) + "," + std::to_string(r.sstar) + "," +
           fmt15(r.wall_time_s) + "\n";
  }
  return out;
}

std::string to_csv(const std::vector<ErrorTableRow>& rows) {
  std::string out = "weights,m,algorithm,log10_e,fixed_point\n";
  for (const auto& r : rows) {
    out += r.weights + "," + std::to_string(r.m) + "," + r.algorithm + "," + fmt15(r.log10_e) + "," +
           (r.fixed_point ? "true" : "false") + "\n";
  }
  return out;
}

double convergence_slope(const std::vector<ConvergenceRow>& rows, const std::string& algorithm) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.algorithm != algorithm) continue;
    x.push_back(std::log(static_cast<double>(r.N)));
    y.push_back(std::log(r.e));
  }
  if (x.size() < 2) throw ValidationError("slope needs at least two rows");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace latqmc
