#include "orbita/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "orbita/errors.hpp"

namespace orbita {

namespace {

void emit(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // Short numeric arrays (vectors) stay on one line.
      const bool flat = j.size() <= 3 && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        emit(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(k).dump();
        out += indent < 0 ? ":" : ": ";
        emit(v, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      break;
    }
    default:
      out += j.dump();
  }
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw InvalidPlan(what + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidPlan(what + ": not finite");
  return v;
}

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw InvalidPlan(what + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidPlan(what + ": missing \"" + key + "\"");
  return *it;
}

}  // namespace

Json to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json to_json(const Orbit& o) { return Json{{"l", to_json(o.l)}, {"s", to_json(o.s)}}; }

Json to_json(const OrbitPoint& p) {
  Json j = to_json(p.orbit);
  j["rhat"] = to_json(p.rhat);
  return j;
}

Json to_json(const TransferPlan& p) {
  Json orbits = Json::array();
  for (const auto& o : p.orbits) orbits.push_back(to_json(o));
  Json points = Json::array();
  for (const auto& r : p.burn_points) points.push_back(to_json(r));
  return Json{{"orbits", orbits}, {"burn_points", points}};
}

Json to_json(const CostReport& c) { return Json{{"deltas", c.deltas}, {"f1", c.f1}, {"f2", c.f2}}; }

Json to_json(const PlanValidation& v) {
  Json res = Json::array();
  for (const auto& r : v.residuals)
    res.push_back(Json{{"name", r.name}, {"value", r.value}, {"is_margin", r.is_margin}});
  Json j{{"valid", v.valid}, {"max_equality_residual", v.max_equality_residual}, {"residuals", res}};
  if (!v.valid) j["first_violation"] = v.first_violation;
  return j;
}

Json to_json(const LambertSolution& s) {
  Json j{{"case", to_string(s.case_tag)},
         {"orbit1", to_json(s.orbit1)},
         {"w0star", to_json(s.w0star)},
         {"w1", to_json(s.w1)},
         {"f2", s.f2},
         {"is_minimum", s.is_minimum},
         {"stationarity_residual", s.stationarity_residual},
         {"radius_residual", s.radius_residual}};
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

std::string dump(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  return out;
}

Vec3 vec3_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw InvalidPlan(what + ": expected an array of 3 numbers");
  return Vec3(number(j[0], what + "[0]"), number(j[1], what + "[1]"), number(j[2], what + "[2]"));
}

Orbit orbit_from_json(const Json& j, const std::string& what) {
  Orbit o;
  o.l = vec3_from_json(field(j, "l", what), what + ".l");
  o.s = vec3_from_json(field(j, "s", what), what + ".s");
  return o;
}

TransferPlan plan_from_json(const Json& j) {
  const Json& orbits = field(j, "orbits", "plan");
  const Json& points = field(j, "burn_points", "plan");
  if (!orbits.is_array()) throw InvalidPlan("plan.orbits: expected an array");
  if (!points.is_array()) throw InvalidPlan("plan.burn_points: expected an array");
  TransferPlan p;
  for (std::size_t i = 0; i < orbits.size(); ++i)
    p.orbits.push_back(orbit_from_json(orbits[i], "orbits[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < points.size(); ++i)
    p.burn_points.push_back(vec3_from_json(points[i], "burn_points[" + std::to_string(i) + "]"));
  return p;
}

LambertInput lambert_input_from_json(const Json& j) {
  LambertInput in;
  in.r0 = vec3_from_json(field(j, "r0", "input"), "r0");
  in.r1 = vec3_from_json(field(j, "r1", "input"), "r1");
  in.w0 = vec3_from_json(field(j, "w0", "input"), "w0");
  in.w1star = vec3_from_json(field(j, "w1star", "input"), "w1star");
  return in;
}

}  // namespace orbita
