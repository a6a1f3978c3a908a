#pragma once

#include <Eigen/Dense>

namespace orbita {

using Vec3 = Eigen::Vector3d;

/// Elliptic Keplerian orbit in the (l, s) encoding:
///   l = sqrt(mu) h / |h|^2,  s = l x e.
/// A plain value; make_orbit() enforces the invariants l.s = 0, |l| > 0 and
/// |s| < |l|. Plans read from files may hold unchecked values, which
/// validate_plan() reports on.
struct Orbit {
  Vec3 l = Vec3::Zero();
  Vec3 s = Vec3::Zero();
};

/// A point of an orbit, given by its unit direction from the focus.
struct OrbitPoint {
  Orbit orbit;
  Vec3 rhat = Vec3::UnitX();
};

struct OrbitGeometry {
  double eccentricity = 0.0;
  double semilatus = 0.0;
  /// Unit vector towards the apogee; zero when !apogee_defined.
  Vec3 apogee_dir = Vec3::Zero();
  bool apogee_defined = false;
};

inline constexpr double kMinAngularMomentum = 1e-9;

/// Checked construction. Snaps |l.s| < 1e-12 |l||s| to exact orthogonality.
/// Throws DegenerateOrbit for |l| <= 1e-9, InvalidOrbit for non-orthogonal
/// or non-finite input, NotElliptic for |s| >= |l|.
Orbit make_orbit(const Vec3& l, const Vec3& s);

/// Throws InvalidOrbit unless |rhat| = 1 and rhat.l = 0 (1e-12).
OrbitPoint make_point(const Orbit& o, const Vec3& rhat);

Orbit orbit_from_h_e(const Vec3& h, const Vec3& e, double mu);
std::pair<Vec3, Vec3> orbit_to_h_e(const Orbit& o, double mu);

/// Orbit through position r with normalized velocity w = v / sqrt(mu).
Orbit orbit_from_state(const Vec3& r, const Vec3& w);

/// 1/|r| = |l|^2 + (s x l).rhat
double radius_inverse(const OrbitPoint& pt);
double radius_inverse(const Orbit& o, const Vec3& rhat);

/// w = s + l x rhat
Vec3 velocity_at(const OrbitPoint& pt);
Vec3 velocity_at(const Orbit& o, const Vec3& rhat);

/// s = 0, l = axis / (|axis| sqrt(radius)).
Orbit circular_orbit(double radius, const Vec3& axis);

OrbitGeometry orbit_geometry(const Orbit& o);

}  // namespace orbita
