// latqmc: construct lattice / polynomial lattice rules and run experiments.
// Exit codes: 0 success, 2 invalid input, 1 internal failure.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "latqmc/bench.hpp"

namespace {

using namespace latqmc;

struct Options {
  std::string config;
  unsigned base = 3;
  unsigned m = 4;
  std::string m_range = "4:9";
  std::string dims = "100";
  double alpha = 2.0;
  std::vector<std::string> weights{"geometric:0.5"};
  std::string schedule = "zero";
  std::vector<std::string> algos;
  std::string seed_vector = "ones";
  std::size_t seeds = 100;
  std::uint64_t rng_seed = 1;
  unsigned repeats = 3;
  unsigned max_iter = 10;
  std::string vector_file;
  std::string out;
  std::string format;
};

std::vector<unsigned> parse_m_list(const std::string& text) {
  std::vector<unsigned> ms;
  const auto colon = text.find(':');
  try {
    if (colon != std::string::npos) {
      const unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, colon)));
      const unsigned hi = static_cast<unsigned>(std::stoul(text.substr(colon + 1)));
      if (lo < 1 || hi < lo) throw ValidationError("--m-range must be lo:hi with 1 <= lo <= hi");
      for (unsigned m = lo; m <= hi; ++m) ms.push_back(m);
      return ms;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) ms.push_back(static_cast<unsigned>(std::stoul(item)));
  } catch (const std::logic_error&) {
    throw ValidationError("cannot parse m list '" + text + "'");
  }
  if (ms.empty()) throw ValidationError("empty m list");
  return ms;
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  try {
    for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoul(item));
  } catch (const std::logic_error&) {
    throw ValidationError("cannot parse --dim '" + text + "'");
  }
  if (out.empty() || out.front() == 0) throw ValidationError("--dim must be >= 1");
  return out;
}

std::vector<std::string> expand_algos(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& a : raw) {
    std::stringstream ss(a);
    for (std::string item; std::getline(ss, item, ',');) {
      require_algorithm(item);
      out.push_back(item);
    }
  }
  return out;
}

// Config file keys mirror the long flag names; flags given on the command line win.
void apply_config(Options& o, const CLI::App& app) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw ValidationError("cannot open config '" + o.config + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  auto set = [&](const char* key, auto& target) {
    if (!j.contains(key) || app.count(std::string("--") + key) > 0) return;
    try {
      j.at(key).get_to(target);
    } catch (const Json::exception&) {
      throw ValidationError(std::string("config field '") + key + "' has the wrong type");
    }
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> known{"base", "m", "m-range", "dim", "alpha", "weights", "schedule", "algo",
                                             "seed-vector", "seeds", "rng-seed", "repeats", "max-iter", "out",
                                             "format"};
    if (!known.count(it.key())) throw ValidationError("unknown config field '" + it.key() + "'");
  }
  set("base", o.base);
  set("m", o.m);
  set("m-range", o.m_range);
  if (j.contains("dim") && app.count("--dim") == 0) {
    o.dims = j["dim"].is_number_unsigned() ? std::to_string(j["dim"].get<std::size_t>()) : j["dim"].get<std::string>();
  }
  set("alpha", o.alpha);
  if (j.contains("weights") && app.count("--weights") == 0) {
    o.weights = j["weights"].is_array() ? j["weights"].get<std::vector<std::string>>()
                                        : std::vector<std::string>{j["weights"].get<std::string>()};
  }
  set("schedule", o.schedule);
  if (j.contains("algo") && app.count("--algo") == 0) {
    o.algos = j["algo"].is_array() ? j["algo"].get<std::vector<std::string>>()
                                   : std::vector<std::string>{j["algo"].get<std::string>()};
  }
  set("seed-vector", o.seed_vector);
  set("seeds", o.seeds);
  set("rng-seed", o.rng_seed);
  set("repeats", o.repeats);
  set("max-iter", o.max_iter);
  set("out", o.out);
  set("format", o.format);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw ValidationError("cannot write '" + o.out + "'");
  f << text;
}

void check_format(const Options& o, std::initializer_list<const char*> allowed) {
  if (o.format.empty()) return;
  for (const char* a : allowed) {
    if (o.format == a) return;
  }
  throw ValidationError("unsupported --format '" + o.format + "' for this command");
}

std::optional<std::vector<std::uint64_t>> seed_from(const Options& o, unsigned b, unsigned m, std::size_t s,
                                                    const ScheduleSpec& sched, const std::string& algo) {
  if (o.seed_vector == "ones") return std::nullopt;
  const bool reduced = algo.front() == 'r';
  const ReductionSchedule schedule = reduced ? sched.expand(b, s) : ReductionSchedule::zeros(b, s);
  if (o.seed_vector == "random") {
    if (is_poly_algorithm(algo)) {
      Rng rng(o.rng_seed);
      std::vector<std::uint64_t> g(s, 1);
      for (std::size_t j = 0; j < s; ++j) {
        if (schedule.w(j) < m) g[j] = unit_at(rng.below(reduced_search_space_size(b, m, schedule.w(j))), b);
      }
      return g;
    }
    Rng rng(o.rng_seed);
    return random_reduced_seed(b, m, schedule, rng).z;
  }
  std::ifstream in(o.seed_vector);
  if (!in) throw ValidationError("--seed-vector must be 'ones', 'random' or a readable file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("seed file is not valid JSON: ") + e.what());
  }
  if (j.is_array()) return j.get<std::vector<std::uint64_t>>();
  if (is_poly_json(j)) return poly_vector_from_json(j).vector.g;
  return vector_from_json(j).vector.z;
}

int cmd_construct(const Options& o) {
  check_format(o, {"json"});
  if (o.algos.size() > 1) throw ValidationError("construct takes a single --algo");
  RunSpec spec;
  spec.b = o.base;
  spec.m = o.m;
  spec.s = parse_dims(o.dims).front();
  spec.alpha = o.alpha;
  spec.weights = WeightSpec::parse(o.weights.front());
  spec.schedule = ScheduleSpec::parse(o.schedule);
  spec.algorithm = o.algos.empty() ? "rscs" : o.algos.front();
  require_algorithm(spec.algorithm);
  spec.seed_z = seed_from(o, spec.b, spec.m, spec.s, spec.schedule, spec.algorithm);
  const RunOutcome out = run_one(spec);
  emit(o, outcome_to_json(out, spec).dump(2) + "\n");
  return 0;
}

int cmd_error(const Options& o) {
  check_format(o, {"json", "csv"});
  if (o.vector_file.empty()) throw ValidationError("error needs --vector <file>");
  std::ifstream in(o.vector_file);
  if (!in) throw ValidationError("cannot open '" + o.vector_file + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("vector file is not valid JSON: ") + e.what());
  }
  const double e2 = evaluate_json_vector(j);
  if (o.format == "csv") {
    emit(o, "squared_error,e\n" + fmt15(e2) + "," + fmt15(std::sqrt(e2)) + "\n");
  } else {
    emit(o, Json{{"squared_error", e2}, {"e", std::sqrt(e2)}}.dump(2) + "\n");
  }
  return 0;
}

int cmd_convergence(const Options& o) {
  check_format(o, {"csv"});
  const auto ms = parse_m_list(o.m_range);
  ConvergenceConfig cfg;
  cfg.b = o.base;
  cfg.m_lo = ms.front();
  cfg.m_hi = ms.back();
  cfg.s = parse_dims(o.dims).front();
  cfg.alpha = o.alpha;
  cfg.weights = WeightSpec::parse(o.weights.front());
  cfg.schedule = ScheduleSpec::parse(o.schedule);
  cfg.algorithms = o.algos;
  emit(o, to_csv(run_convergence(cfg)));
  return 0;
}

int cmd_timing(const Options& o) {
  check_format(o, {"csv"});
  TimingConfig cfg;
  cfg.b = o.base;
  cfg.ms = parse_m_list(o.m_range);
  cfg.dims = parse_dims(o.dims);
  cfg.alpha = o.alpha;
  cfg.weights = WeightSpec::parse(o.weights.front());
  cfg.schedule = ScheduleSpec::parse(o.schedule);
  cfg.algorithms = o.algos;
  cfg.repeats = o.repeats;
  emit(o, to_csv(run_timing(cfg)));
  return 0;
}

int cmd_error_table(const Options& o) {
  check_format(o, {"csv"});
  ErrorTableConfig cfg;
  cfg.b = o.base;
  cfg.ms = parse_m_list(o.m_range);
  cfg.s = parse_dims(o.dims).front();
  cfg.alpha = o.alpha;
  for (const auto& w : o.weights) cfg.weights.push_back(WeightSpec::parse(w));
  cfg.schedule = ScheduleSpec::parse(o.schedule);
  cfg.seeds = o.seeds;
  cfg.rng_seed = o.rng_seed;
  cfg.max_iterations = o.max_iter;
  const auto rows = run_error_table(cfg);
  for (const auto& r : rows) {
    if (r.algorithm == "rscs-multi" && !r.fixed_point) {
      std::cerr << "note: iterated SCS hit the cap of " << cfg.max_iterations << " runs without a fixed point ("
                << r.weights << ", m=" << r.m << ")\n";
    }
  }
  emit(o, to_csv(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-1 and polynomial lattice rule constructions"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config; keys mirror the long flag names");
    sub->add_option("--base", o.base, "prime base b");
    sub->add_option("--alpha", o.alpha, "smoothness");
    sub->add_option("--dim", o.dims, "dimension s (comma list for timing)");
    sub->add_option("--weights", o.weights, "geometric:q | poly:a | const:c | list:g1,g2,... | file");
    sub->add_option("--schedule", o.schedule, "zero | log:c | list:w1,w2,... | file");
    sub->add_option("--algo", o.algos, "cbc, rcbc, scs, rscs, scs-poly, rscs-poly");
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--format", o.format, "csv | json");
  };

  auto* construct = app.add_subcommand("construct", "build one generating vector and print it as JSON");
  common(construct);
  construct->add_option("--m", o.m, "N = b^m");
  construct->add_option("--seed-vector", o.seed_vector, "ones | random | file");
  construct->add_option("--rng-seed", o.rng_seed, "seed for --seed-vector random");

  auto* error = app.add_subcommand("error", "worst-case error of a stored vector");
  error->add_option("--vector", o.vector_file, "vector JSON")->required();
  error->add_option("--out", o.out, "output path (default stdout)");
  error->add_option("--format", o.format, "json | csv");

  auto* convergence = app.add_subcommand("convergence", "error against N for each algorithm (CSV)");
  common(convergence);
  convergence->add_option("--m-range", o.m_range, "lo:hi");

  auto* timing = app.add_subcommand("timing", "construction times (CSV)");
  common(timing);
  timing->add_option("--m-range,--m", o.m_range, "lo:hi or comma list");
  timing->add_option("--repeats", o.repeats, "runs per cell; the median is reported");

  auto* table = app.add_subcommand("error-table", "log10 errors of CBC and best-of-q SCS (CSV)");
  common(table);
  table->add_option("--m-range", o.m_range, "lo:hi or comma list");
  table->add_option("--seeds", o.seeds, "number of random seed vectors q");
  table->add_option("--rng-seed", o.rng_seed, "RNG seed");
  table->add_option("--max-iter", o.max_iter, "cap on iterated SCS runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config(o, *sub);
    o.algos = expand_algos(o.algos);
    if (sub == construct) return cmd_construct(o);
    if (sub == error) return cmd_error(o);
    if (sub == convergence) return cmd_convergence(o);
    if (sub == timing) return cmd_timing(o);
    return cmd_error_table(o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
