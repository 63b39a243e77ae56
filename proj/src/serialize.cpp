#include "latqmc/serialize.hpp"

#include <bit>

namespace latqmc {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

SpaceParams params_from(const Json& j) {
  const double alpha = j.contains("alpha") ? field<double>(j, "alpha") : 2.0;
  if (!j.contains("weights")) throw ValidationError("missing field 'weights'");
  return SpaceParams::make(field<unsigned>(j, "b"), field<unsigned>(j, "m"), alpha, weights_from_json(j.at("weights")));
}

}  // namespace

Json weights_to_json(const WeightModel& w) {
  if (w.is_product()) return Json{{"type", "product"}, {"gammas", w.as_product().gammas}};
  Json terms = Json::array();
  for (const auto& [mask, g] : w.as_general().terms) {
    std::vector<unsigned> subset;
    for (SubsetMask u = mask; u != 0; u &= u - 1) subset.push_back(static_cast<unsigned>(std::countr_zero(u)) + 1);
    terms.push_back(Json{{"subset", subset}, {"gamma", g}});
  }
  return Json{{"type", "general"}, {"terms", terms}};
}

WeightModel weights_from_json(const Json& j) {
  const auto type = field<std::string>(j, "type");
  if (type == "product") return WeightModel::product(field<std::vector<double>>(j, "gammas"));
  if (type != "general") throw ValidationError("weights.type must be 'product' or 'general'");
  std::map<SubsetMask, double> terms;
  for (const auto& t : field<Json>(j, "terms")) {
    SubsetMask mask = 0;
    for (unsigned i : field<std::vector<unsigned>>(t, "subset")) {
      if (i < 1 || i > kMaxGeneralDim) throw ValidationError("subset index out of range");
      mask |= SubsetMask{1} << (i - 1);
    }
    terms[mask] = field<double>(t, "gamma");
  }
  return WeightModel::general(std::move(terms));
}

Json vector_to_json(const GeneratingVector& z, const SpaceParams& params) {
  return Json{{"b", z.b},         {"m", z.m},
              {"s", z.s()},       {"alpha", params.alpha},
              {"w", z.w},         {"z", z.z},
              {"effective", z.effective}, {"weights", weights_to_json(params.weights)}};
}

Json poly_vector_to_json(const PolyGeneratingVector& g, const SpaceParams& params) {
  Json polys = Json::array();
  for (auto code : g.g) polys.push_back(from_code(code, g.b).coeffs);
  return Json{{"b", g.b},     {"m", g.m},     {"s", g.s()},
              {"w", g.w},     {"g", polys},   {"alpha", params.alpha},
              {"weights", weights_to_json(params.weights)}};
}

bool is_poly_json(const Json& j) { return j.contains("g") && !j.contains("z"); }

LoadedVector vector_from_json(const Json& j) {
  LoadedVector out{params_from(j), {}, {}};
  const auto z = field<std::vector<std::uint64_t>>(j, "z");
  const auto w = j.contains("w") ? field<std::vector<unsigned>>(j, "w") : std::vector<unsigned>(z.size(), 0);
  out.schedule = ReductionSchedule(out.params.b, w);
  out.vector = GeneratingVector::make(out.params.b, out.params.m, out.schedule, z);
  if (j.contains("effective") && field<std::vector<std::uint64_t>>(j, "effective") != out.vector.effective) {
    throw ValidationError("field 'effective' disagrees with w and z");
  }
  if (j.contains("s") && field<std::size_t>(j, "s") != z.size()) throw ValidationError("field 's' disagrees with z");
  return out;
}

LoadedPolyVector poly_vector_from_json(const Json& j) {
  LoadedPolyVector out{params_from(j), {}, {}};
  const auto polys = field<std::vector<std::vector<unsigned>>>(j, "g");
  const auto w = j.contains("w") ? field<std::vector<unsigned>>(j, "w") : std::vector<unsigned>(polys.size(), 0);
  out.schedule = ReductionSchedule(out.params.b, w);
  std::vector<std::uint64_t> codes;
  for (const auto& c : polys) {
    const PolyGF p = PolyGF::make(out.params.b, c);
    if (p.degree() >= static_cast<int>(out.params.m)) throw ValidationError("polynomial degree must be < m");
    codes.push_back(to_code(p, out.params.m));
  }
  out.vector = PolyGeneratingVector::make(out.params.b, out.params.m, out.schedule, codes);
  return out;
}

}  // namespace latqmc
