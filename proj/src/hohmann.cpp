#include "orbita/hohmann.hpp"

#include <cmath>
#include <stdexcept>

#include "orbita/errors.hpp"
#include "orbita/poly/roots.hpp"

namespace orbita {

namespace {

void check(const HohmannInput& in) {
  if (in.l0z == 0.0 || in.l2z == 0.0 || !std::isfinite(in.l0z) || !std::isfinite(in.l2z))
    throw DegenerateOrbit("hohmann: l0z and l2z must be finite and non-zero");
}

Orbit circ(double lz) { return Orbit{Vec3(0, 0, lz), Vec3::Zero()}; }

HohmannBranchSolution finish(TransferPlan plan, HohmannBranch branch) {
  HohmannBranchSolution sol;
  sol.plan = std::move(plan);
  sol.branch = branch;
  sol.feasible = validate_plan(sol.plan, 1e-12).valid;
  sol.f1 = impulses_unchecked(sol.plan).f1;
  return sol;
}

}  // namespace

std::string to_string(HohmannBranch b) {
  switch (b) {
    case HohmannBranch::coplanar: return "coplanar";
    case HohmannBranch::out_of_plane: return "out_of_plane";
    case HohmannBranch::same_orbit: return "same_orbit";
    case HohmannBranch::reversal: return "reversal";
  }
  return "?";
}

std::vector<HohmannBranchSolution> solve_coplanar(const HohmannInput& in) {
  check(in);
  const double a = in.l0z * in.l0z, b = in.l2z * in.l2z;
  const double k = (a - b) / (a + b);
  std::vector<HohmannBranchSolution> out;
  for (const double sign : {1.0, -1.0}) {
    const double l1z = sign * std::sqrt(0.5 * (a + b));
    TransferPlan plan;
    plan.orbits = {circ(in.l0z), Orbit{Vec3(0, 0, l1z), Vec3(0, k * l1z, 0)}, circ(in.l2z)};
    plan.burn_points = {Vec3::UnitX(), -Vec3::UnitX()};
    auto sol = finish(std::move(plan), HohmannBranch::coplanar);
    // Closed-form cost; agrees with the impulse evaluation up to rounding.
    sol.f1 = std::abs(sign * std::sqrt(2.0) * a / std::sqrt(a + b) - in.l0z) +
             std::abs(sign * std::sqrt(2.0) * b / std::sqrt(a + b) - in.l2z);
    out.push_back(std::move(sol));
  }
  const double sum = in.l0z + in.l2z;
  if (sum == 0.0) {
    out[0].tie = out[1].tie = true;
    out[0].optimal = true;
  } else {
    const std::size_t pick = sum > 0.0 ? 0 : 1;
    if (out[pick].f1 > out[1 - pick].f1 * (1.0 + 1e-12) + 1e-15)
      throw std::logic_error("hohmann: optimal l1z sign differs from sign(l0z + l2z)");
    out[pick].optimal = true;
  }
  return out;
}

std::pair<double, double> out_of_plane_window() {
  static const std::pair<double, double> window = [] {
    const poly::RatPoly q{1, 2, 0, 2, 1};
    const auto roots = poly::isolate_real_roots(q);
    if (roots.size() != 2) throw std::logic_error("hohmann: window quartic must have two real roots");
    return std::pair{poly::refine_root(q, roots[0], 1e-15), poly::refine_root(q, roots[1], 1e-15)};
  }();
  return window;
}

std::vector<HohmannBranchSolution> solve_out_of_plane(const HohmannInput& in) {
  check(in);
  const auto [a1, a2] = out_of_plane_window();
  const double ratio = in.l2z / in.l0z;
  if (!(a1 < ratio && ratio < a2)) return {};
  const double p = in.l0z, q = in.l2z;
  const double p2 = p * p, q2 = q * q;
  const double l1z = (p2 * p2 * p + p2 * p2 * q + 4 * p2 * p * q2 + 4 * p2 * q2 * q + p * q2 * q2 + q2 * q2 * q) /
                     (4 * p * q * (p2 + p * q + q2));
  const double rad = 0.5 * (p2 + q2) - l1z * l1z;
  if (!(rad > 0.0)) return {};
  const double k = (p2 - q2) / (p2 + q2);
  std::vector<HohmannBranchSolution> out;
  for (const double sign : {1.0, -1.0}) {
    const double l1y = sign * std::sqrt(rad);
    TransferPlan plan;
    plan.orbits = {circ(p), Orbit{Vec3(0, l1y, l1z), Vec3(0, k * l1z, -k * l1y)}, circ(q)};
    plan.burn_points = {Vec3::UnitX(), -Vec3::UnitX()};
    out.push_back(finish(std::move(plan), HohmannBranch::out_of_plane));
  }
  out[0].optimal = true;
  return out;
}

HohmannBranchSolution solve_same_radius_cases(const HohmannInput& in) {
  check(in);
  if (std::abs(std::abs(in.l0z) - std::abs(in.l2z)) > 1e-12 * std::abs(in.l0z))
    throw std::invalid_argument("hohmann: same-radius case needs |l0z| = |l2z|");
  TransferPlan plan;
  plan.burn_points = {Vec3::UnitX(), Vec3::UnitX()};
  if ((in.l0z > 0) == (in.l2z > 0)) {
    plan.orbits = {circ(in.l0z), circ(in.l0z), circ(in.l2z)};
    auto sol = finish(std::move(plan), HohmannBranch::same_orbit);
    sol.optimal = true;
    return sol;
  }
  const Vec3 r0 = Vec3::UnitX() / (in.l0z * in.l0z);
  const Vec3 w0 = velocity_at(circ(in.l0z), Vec3::UnitX());
  plan.orbits = {circ(in.l0z), orbit_from_state(r0, 0.5 * w0), circ(in.l2z)};
  auto sol = finish(std::move(plan), HohmannBranch::reversal);
  sol.optimal = true;
  return sol;
}

std::vector<HohmannBranchSolution> all_transfers(double r0, double r2, int dir0, int dir2) {
  if (!(r0 > 0.0) || !(r2 > 0.0)) throw std::invalid_argument("hohmann: radii must be positive");
  if ((dir0 != 1 && dir0 != -1) || (dir2 != 1 && dir2 != -1))
    throw std::invalid_argument("hohmann: directions must be +1 or -1");
  const HohmannInput in{circular_orbit(r0, Vec3(0, 0, dir0)).l.z(), circular_orbit(r2, Vec3(0, 0, dir2)).l.z()};
  auto out = solve_coplanar(in);
  for (auto& s : out) s.optimal = false;
  for (auto& s : solve_out_of_plane(in)) {
    s.optimal = false;
    out.push_back(std::move(s));
  }
  if (std::abs(std::abs(in.l0z) - std::abs(in.l2z)) <= 1e-12 * std::abs(in.l0z)) {
    auto s = solve_same_radius_cases(in);
    s.optimal = false;
    out.push_back(std::move(s));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].feasible && (!out[best].feasible || out[i].f1 < out[best].f1)) best = i;
  out[best].optimal = true;
  return out;
}

HohmannBranchSolution best_transfer(double r0, double r2, int dir0, int dir2) {
  for (auto& s : all_transfers(r0, r2, dir0, dir2))
    if (s.optimal) return s;
  throw std::logic_error("hohmann: no candidate flagged");
}

}  // namespace orbita
