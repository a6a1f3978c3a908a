#include "orbita/lambert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orbita/errors.hpp"
#include "orbita/oracle.hpp"
#include "orbita/poly/resultant.hpp"
#include "orbita/poly/roots.hpp"

namespace orbita {

using poly::MPoly;
using poly::Rat;
using poly::rat_from_double;

namespace {

const std::vector<std::string> kVars{"sx", "sy", "l"};

MPoly det3(const MPoly (&m)[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

void flag_minimum(std::vector<LambertSolution>& sols, double feasibility_tol) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = sols.size();
  for (std::size_t i = 0; i < sols.size(); ++i) {
    sols[i].is_minimum = false;
    if (sols[i].radius_residual > feasibility_tol) continue;
    if (sols[i].f2 < best) {
      best = sols[i].f2;
      arg = i;
    }
  }
  if (arg < sols.size()) sols[arg].is_minimum = true;
}

struct AlignedParts {
  Vec3 rhat0;
  double k0, k1;
  double radial;  // average radial speed
  Vec3 a, b;  // tangential parts of w0 and w1star
};

AlignedParts aligned_parts(const LambertInput& in) {
  AlignedParts p;
  p.rhat0 = in.r0.normalized();
  p.k0 = 1.0 / in.r0.norm();
  p.k1 = 1.0 / in.r1.norm();
  p.radial = 0.5 * (in.w0.dot(p.rhat0) + in.w1star.dot(p.rhat0));
  p.a = in.w0 - in.w0.dot(p.rhat0) * p.rhat0;
  p.b = in.w1star - in.w1star.dot(p.rhat0) * p.rhat0;
  return p;
}

// Opposite-point candidate with tangential part `perp` of w0*.
LambertSolution opposite_candidate(const LambertInput& in, const AlignedParts& p, const Vec3& perp) {
  LambertSolution sol;
  sol.case_tag = LambertCase::aligned_opposite;
  sol.w0star = p.radial * p.rhat0 + perp;
  sol.w1 = p.radial * p.rhat0 - (p.k1 / p.k0) * perp;
  sol.f2 = (sol.w0star - in.w0).squaredNorm() + (in.w1star - sol.w1).squaredNorm();
  try {
    sol.orbit1 = orbit_from_state(in.r0, sol.w0star);
  } catch (const Error& e) {
    throw NoEllipticCandidate(std::string("aligned opposite: transfer orbit rejected: ") + e.what());
  }
  sol.radius_residual = std::abs(radius_inverse(sol.orbit1, -p.rhat0) - p.k1);
  return sol;
}

}  // namespace

std::string to_string(LambertCase c) {
  switch (c) {
    case LambertCase::general: return "general";
    case LambertCase::aligned_same: return "aligned_same";
    case LambertCase::aligned_opposite: return "aligned_opposite";
  }
  return "unknown";
}

std::pair<FramedLambert, Frame> canonical_frame(const LambertInput& in) {
  const double n0 = in.r0.norm(), n1 = in.r1.norm();
  if (n0 == 0.0 || n1 == 0.0) throw DegenerateGeometry("zero position vector");
  const Vec3 n = in.r0.cross(in.r1);
  if (n.norm() <= kCollinearTolerance * n0 * n1) throw CollinearInput("r0 and r1 are parallel");
  Frame frame;
  const Vec3 e1 = in.r0 / n0;
  const Vec3 e3 = n.normalized();
  const Vec3 e2 = e3.cross(e1);
  frame.R.row(0) = e1.transpose();
  frame.R.row(1) = e2.transpose();
  frame.R.row(2) = e3.transpose();
  FramedLambert f;
  f.k0 = 1.0 / n0;
  f.k1 = 1.0 / n1;
  const Vec3 rh1 = frame.to_frame(in.r1 / n1);
  f.x1 = rh1.x();
  f.y1 = rh1.y();
  f.w0 = frame.to_frame(in.w0);
  f.w1star = frame.to_frame(in.w1star);
  return {f, frame};
}

LambertSystem build_lambert_system(const FramedLambert& f) {
  const MPoly sx = MPoly::variable(kVars, "sx");
  const MPoly sy = MPoly::variable(kVars, "sy");
  const MPoly l = MPoly::variable(kVars, "l");
  const Rat k0 = rat_from_double(f.k0), k1 = rat_from_double(f.k1);
  const Rat x1 = rat_from_double(f.x1), y1 = rat_from_double(f.y1);
  const Rat w0x = rat_from_double(f.w0.x()), w0y = rat_from_double(f.w0.y()), w0z = rat_from_double(f.w0.z());
  const Rat w1x = rat_from_double(f.w1star.x()), w1y = rat_from_double(f.w1star.y()),
            w1z = rat_from_double(f.w1star.z());

  LambertSystem sys;
  const MPoly d0x = sx - w0x;
  const MPoly d0y = sy + l - w0y;
  const MPoly d1x = w1x - sx + y1 * l;
  const MPoly d1y = w1y - sy - x1 * l;
  sys.q = d0x * d0x + d0y * d0y + d1x * d1x + d1y * d1y + Rat(w0z * w0z + w1z * w1z);
  sys.q1 = l * l + l * sy - k0;
  sys.q2 = l * l + l * (x1 * sy - y1 * sx) - k1;
  const MPoly* rows[3] = {&sys.q, &sys.q1, &sys.q2};
  MPoly m[3][3];
  for (int i = 0; i < 3; ++i) {
    m[i][0] = rows[i]->partial("sx");
    m[i][1] = rows[i]->partial("sy");
    m[i][2] = rows[i]->partial("l");
  }
  sys.jacobian = det3(m);
  return sys;
}

poly::RatPoly lambert_eliminant(const LambertSystem& sys) {
  const MPoly r1 = poly::resultant(sys.q2, sys.jacobian, "sx");
  const MPoly r2 = poly::resultant(sys.q1, r1, "sy");
  poly::RatPoly p = r2.to_univariate("l");
  while (!p.is_zero() && p.coeff(0) == 0) p = poly::exact_divide(p, poly::RatPoly{Rat(0), Rat(1)});
  if (p.degree() != 4)
    throw PipelineDegreeMismatch("lambert eliminant has degree " + std::to_string(p.degree()) + ", expected 4");
  return p.primitive();
}

std::vector<LambertSolution> solve_general(const FramedLambert& f, const Frame& frame) {
  const LambertSystem sys = build_lambert_system(f);
  const poly::RatPoly quartic = lambert_eliminant(sys);
  std::vector<LambertSolution> out;
  std::size_t rejected = 0;
  const Vec3 r0hat = Vec3::UnitX();
  const Vec3 r1hat(f.x1, f.y1, 0.0);
  for (const auto& iv : poly::isolate_real_roots(quartic)) {
    const double l = poly::refine_root(quartic, iv);
    if (std::abs(l) < 1e-12) continue;
    const double sy = (f.k0 - l * l) / l;
    const double sx = (l * l + l * f.x1 * sy - f.k1) / (l * f.y1);
    if (sx * sx + sy * sy >= l * l) {
      ++rejected;
      continue;
    }
    LambertSolution sol;
    sol.case_tag = LambertCase::general;
    sol.l1z = l;
    sol.s1x = sx;
    sol.s1y = sy;
    const Orbit framed{Vec3(0, 0, l), Vec3(sx, sy, 0)};
    const Vec3 w0s = velocity_at(framed, r0hat);
    const Vec3 w1 = velocity_at(framed, r1hat);
    sol.f2 = (w0s - f.w0).squaredNorm() + (f.w1star - w1).squaredNorm();
    sol.orbit1 = Orbit{frame.to_world(framed.l), frame.to_world(framed.s)};
    sol.w0star = frame.to_world(w0s);
    sol.w1 = frame.to_world(w1);
    sol.radius_residual = std::abs(radius_inverse(framed, r1hat) - f.k1);
    const std::vector<double> pt{sx, sy, l};
    sol.stationarity_residual = stationarity_check({sys.q1, sys.q2}, sys.q, pt).gradient_residual;
    out.push_back(sol);
  }
  if (out.empty())
    throw NoEllipticCandidate("no elliptic critical point (" + std::to_string(rejected) + " rejected)");
  flag_minimum(out, std::numeric_limits<double>::infinity());
  return out;
}

LambertSolution solve_aligned_same(const LambertInput& in) {
  const double n0 = in.r0.norm(), n1 = in.r1.norm();
  if (std::abs(n0 - n1) > 1e-9 * std::max(n0, n1))
    throw RadiusMismatch("aligned points need equal radii");
  LambertSolution sol;
  sol.case_tag = LambertCase::aligned_same;
  sol.w0star = 0.5 * (in.w0 + in.w1star);
  sol.w1 = sol.w0star;
  sol.f2 = (sol.w0star - in.w0).squaredNorm() + (in.w1star - sol.w1).squaredNorm();
  try {
    sol.orbit1 = orbit_from_state(in.r0, sol.w0star);
  } catch (const Error& e) {
    throw NoEllipticCandidate(std::string("aligned same: transfer orbit rejected: ") + e.what());
  }
  const Vec3 grad = 2.0 * (sol.w0star - in.w0) - 2.0 * (in.w1star - sol.w1);
  sol.stationarity_residual = grad.norm();
  return sol;
}

LambertSolution solve_aligned_opposite(const LambertInput& in) {
  const AlignedParts p = aligned_parts(in);
  const Vec3 perp = p.k0 * (p.k0 * p.a - p.k1 * p.b) / (p.k0 * p.k0 + p.k1 * p.k1);
  LambertSolution sol = opposite_candidate(in, p, perp);
  // Gradient of f2(w0*) with w1 = P_radial w0* - (k1/k0) P_tangential w0*.
  const double c = p.k1 / p.k0;
  const Vec3 t0 = sol.w0star - in.w0;
  const Vec3 t1 = in.w1star - sol.w1;
  const Vec3 t1_rad = t1.dot(p.rhat0) * p.rhat0;
  const Vec3 grad = 2.0 * t0 - 2.0 * (t1_rad - c * (t1 - t1_rad));
  sol.stationarity_residual = grad.norm();
  if (sol.radius_residual > kLambertRadiusTolerance)
    sol.note = "closed form ignores the radius condition at r1";
  return sol;
}

LambertSolution solve_aligned_opposite_feasible(const LambertInput& in) {
  const AlignedParts p = aligned_parts(in);
  Vec3 dir = p.k0 * p.a - p.k1 * p.b;
  if (dir.norm() < 1e-300) {
    dir = p.rhat0.cross(Vec3::UnitZ());
    if (dir.norm() < 1e-6) dir = p.rhat0.cross(Vec3::UnitX());
  }
  dir.normalize();
  const double speed = std::sqrt(2.0 * p.k0 * p.k0 / (p.k0 + p.k1));
  LambertSolution sol = opposite_candidate(in, p, speed * dir);
  // Only the direction within the tangential circle is free.
  const double c = p.k1 / p.k0;
  const Vec3 t0 = sol.w0star - in.w0;
  const Vec3 t1 = in.w1star - sol.w1;
  const Vec3 t1_rad = t1.dot(p.rhat0) * p.rhat0;
  Vec3 grad = 2.0 * t0 - 2.0 * (t1_rad - c * (t1 - t1_rad));
  grad -= grad.dot(dir) * dir;
  sol.stationarity_residual = grad.norm();
  sol.note = "tangential speed fixed by the radius condition";
  return sol;
}

std::vector<LambertSolution> solve_lambert(const LambertInput& in) {
  const double n0 = in.r0.norm(), n1 = in.r1.norm();
  if (n0 == 0.0 || n1 == 0.0) throw DegenerateGeometry("zero position vector");
  const bool collinear = in.r0.cross(in.r1).norm() <= kCollinearTolerance * n0 * n1;
  std::vector<LambertSolution> out;
  if (!collinear) {
    const auto [framed, frame] = canonical_frame(in);
    out = solve_general(framed, frame);
    flag_minimum(out, kLambertRadiusTolerance);
    return out;
  }
  if (in.r0.dot(in.r1) > 0.0) {
    out.push_back(solve_aligned_same(in));
  } else {
    for (auto solver : {&solve_aligned_opposite, &solve_aligned_opposite_feasible}) {
      try {
        out.push_back(solver(in));
      } catch (const NoEllipticCandidate&) {
      }
    }
    if (out.empty()) throw NoEllipticCandidate("aligned opposite: no elliptic transfer orbit");
  }
  flag_minimum(out, kLambertRadiusTolerance);
  return out;
}

}  // namespace orbita
