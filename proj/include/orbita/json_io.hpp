#pragma once

#include <json.hpp>
#include <string>

#include "orbita/kepler.hpp"
#include "orbita/lambert.hpp"
#include "orbita/transfer.hpp"

namespace orbita {

using Json = nlohmann::ordered_json;

Json to_json(const Vec3& v);
Json to_json(const Orbit& o);
Json to_json(const OrbitPoint& p);
Json to_json(const TransferPlan& p);
Json to_json(const CostReport& c);
Json to_json(const PlanValidation& v);
Json to_json(const LambertSolution& s);

/// Serializes with every float printed as %.17g; NaN and infinities become null.
std::string dump(const Json& j, int indent = 2);

/// The readers throw InvalidPlan naming the offending field.
Vec3 vec3_from_json(const Json& j, const std::string& what);
Orbit orbit_from_json(const Json& j, const std::string& what = "orbit");
/// {"orbits": [...], "burn_points": [[x, y, z], ...]}; values are not
/// checked beyond being finite numbers (validate_plan does that).
TransferPlan plan_from_json(const Json& j);
/// {"r0": [...], "r1": [...], "w0": [...], "w1star": [...]}
LambertInput lambert_input_from_json(const Json& j);

}  // namespace orbita
