#pragma once

// JSON forms of weights, lattice and polynomial generating vectors.

#include <json.hpp>

#include "latqmc/construct.hpp"
#include "latqmc/poly.hpp"

namespace latqmc {

using Json = nlohmann::json;

Json weights_to_json(const WeightModel& w);
WeightModel weights_from_json(const Json& j);

/// {b, m, s, alpha, w, z, effective, weights}
Json vector_to_json(const GeneratingVector& z, const SpaceParams& params);

/// {b, m, s, w, g: [[c0, c1, ...], ...]} plus alpha and weights.
Json poly_vector_to_json(const PolyGeneratingVector& g, const SpaceParams& params);

struct LoadedVector {
  SpaceParams params;
  ReductionSchedule schedule;
  GeneratingVector vector;
};

struct LoadedPolyVector {
  SpaceParams params;
  ReductionSchedule schedule;
  PolyGeneratingVector vector;
};

/// Inverse of vector_to_json; the effective list, when present, must agree.
LoadedVector vector_from_json(const Json& j);
LoadedPolyVector poly_vector_from_json(const Json& j);

/// True when the object carries polynomial coefficient lists.
bool is_poly_json(const Json& j);

}  // namespace latqmc
