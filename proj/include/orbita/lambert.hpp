#pragma once

#include <string>
#include <vector>

#include "orbita/kepler.hpp"
#include "orbita/poly/mpoly.hpp"
#include "orbita/poly/rat_poly.hpp"

namespace orbita {

/// Minimum sum-of-squares two-impulse transfer between fixed points:
/// arrive at r0 with velocity w0, leave r1 with velocity w1star
/// (velocities normalized by sqrt(mu)).
struct LambertInput {
  Vec3 r0 = Vec3::UnitX();
  Vec3 r1 = Vec3::UnitY();
  Vec3 w0 = Vec3::Zero();
  Vec3 w1star = Vec3::Zero();
};

/// Rotation taking world vectors into the frame where rhat0 = (1, 0, 0) and
/// both positions lie in z = 0 with y1 > 0.
struct Frame {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Vec3 to_frame(const Vec3& v) const { return R * v; }
  Vec3 to_world(const Vec3& v) const { return R.transpose() * v; }
};

/// LambertInput in its canonical frame.
struct FramedLambert {
  double k0 = 1.0;  // 1 / |r0|
  double k1 = 1.0;  // 1 / |r1|
  double x1 = 0.0, y1 = 1.0;  // rhat1
  Vec3 w0 = Vec3::Zero();
  Vec3 w1star = Vec3::Zero();
};

enum class LambertCase { general, aligned_same, aligned_opposite };
std::string to_string(LambertCase c);

struct LambertSolution {
  Orbit orbit1;  // world frame
  Vec3 w0star = Vec3::Zero();
  Vec3 w1 = Vec3::Zero();
  double f2 = 0.0;
  LambertCase case_tag = LambertCase::general;
  double stationarity_residual = 0.0;
  /// |1/r of orbit1 at rhat1 - 1/|r1||; large values mean the transfer misses r1.
  double radius_residual = 0.0;
  bool is_minimum = false;
  std::string note;
  /// Framed unknowns (general case only).
  double l1z = 0.0, s1x = 0.0, s1y = 0.0;
};

inline constexpr double kCollinearTolerance = 1e-12;
/// Candidates whose orbit misses r1 by more than this are never flagged minimal.
inline constexpr double kLambertRadiusTolerance = 1e-9;

/// Throws CollinearInput when r0 and r1 are parallel.
std::pair<FramedLambert, Frame> canonical_frame(const LambertInput& in);

/// Polynomials of the framed problem over variables {sx, sy, l}:
/// cost q = f2, constraints q1, q2 and the Jacobian determinant of (q, q1, q2).
struct LambertSystem {
  poly::MPoly q, q1, q2, jacobian;
};
LambertSystem build_lambert_system(const FramedLambert& f);

/// Res_sy(q1, Res_sx(q2, J)) with powers of l removed; degree 4 in l.
poly::RatPoly lambert_eliminant(const LambertSystem& sys);

/// All critical points with l1z != 0, ellipticity enforced; minimum flagged.
/// Throws NoEllipticCandidate when no critical point is elliptic.
std::vector<LambertSolution> solve_general(const FramedLambert& f, const Frame& frame = {});

/// rhat0 = rhat1: w0* = w1 = (w0 + w1star) / 2. Throws RadiusMismatch if
/// |r0| != |r1| (relative 1e-9).
LambertSolution solve_aligned_same(const LambertInput& in);

/// rhat0 = -rhat1 closed form: tangential part of w0* is
/// k0 (k0 w0 - k1 w1star) / (k0^2 + k1^2), radial part the average.
LambertSolution solve_aligned_opposite(const LambertInput& in);

/// Same direction as solve_aligned_opposite but with the tangential speed
/// forced to sqrt(2 k0^2 / (k0 + k1)), the value for which the transfer orbit
/// actually passes through r1.
LambertSolution solve_aligned_opposite_feasible(const LambertInput& in);

/// Dispatch on the geometry of r0, r1; returns every candidate with the
/// feasible minimum flagged.
std::vector<LambertSolution> solve_lambert(const LambertInput& in);

}  // namespace orbita
