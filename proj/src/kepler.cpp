#include "orbita/kepler.hpp"

#include <cmath>
#include <string>

#include "orbita/errors.hpp"

namespace orbita {

namespace {

bool finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

Orbit make_orbit(const Vec3& l, const Vec3& s_in) {
  if (!finite(l) || !finite(s_in)) throw InvalidOrbit("orbit has non-finite components");
  const double nl = l.norm();
  if (nl <= kMinAngularMomentum) throw DegenerateOrbit("|l| too small: rectilinear or degenerate orbit");
  Vec3 s = s_in;
  const double ns = s.norm();
  const double dot = l.dot(s);
  if (ns > 0.0) {
    if (std::abs(dot) > 1e-12 * nl * ns)
      throw InvalidOrbit("l and s are not orthogonal (l.s = " + std::to_string(dot) + ")");
    s -= (dot / (nl * nl)) * l;
  }
  if (s.norm() >= nl) throw NotElliptic("|s| >= |l|: orbit is not an ellipse");
  return Orbit{l, s};
}

OrbitPoint make_point(const Orbit& o, const Vec3& rhat) {
  if (!finite(rhat) || std::abs(rhat.norm() - 1.0) > 1e-12) throw InvalidOrbit("burn direction is not a unit vector");
  if (std::abs(rhat.dot(o.l)) > 1e-12 * o.l.norm()) throw InvalidOrbit("burn direction is not in the orbit plane");
  return OrbitPoint{o, rhat};
}

Orbit orbit_from_h_e(const Vec3& h, const Vec3& e, double mu) {
  if (!(mu > 0.0)) throw InvalidOrbit("mu must be positive");
  const double h2 = h.squaredNorm();
  if (h2 == 0.0) throw DegenerateOrbit("zero angular momentum");
  if (e.norm() >= 1.0) throw NotElliptic("|e| >= 1");
  if (std::abs(h.dot(e)) > 1e-12 * std::sqrt(h2) * std::max(1.0, e.norm()))
    throw InvalidOrbit("h and e are not orthogonal");
  const Vec3 l = std::sqrt(mu) * h / h2;
  return make_orbit(l, l.cross(e));
}

std::pair<Vec3, Vec3> orbit_to_h_e(const Orbit& o, double mu) {
  const double l2 = o.l.squaredNorm();
  return {std::sqrt(mu) * o.l / l2, o.s.cross(o.l) / l2};
}

Orbit orbit_from_state(const Vec3& r, const Vec3& w) {
  const Vec3 h = r.cross(w);
  const double h2 = h.squaredNorm();
  if (h2 <= kMinAngularMomentum * kMinAngularMomentum) throw DegenerateOrbit("rectilinear state");
  const Vec3 e = w.cross(h) - r.normalized();
  const Vec3 l = h / h2;
  return make_orbit(l, l.cross(e));
}

double radius_inverse(const Orbit& o, const Vec3& rhat) { return o.l.squaredNorm() + o.s.cross(o.l).dot(rhat); }

double radius_inverse(const OrbitPoint& pt) { return radius_inverse(pt.orbit, pt.rhat); }

Vec3 velocity_at(const Orbit& o, const Vec3& rhat) { return o.s + o.l.cross(rhat); }

Vec3 velocity_at(const OrbitPoint& pt) { return velocity_at(pt.orbit, pt.rhat); }

Orbit circular_orbit(double radius, const Vec3& axis) {
  if (!(radius > 0.0)) throw InvalidOrbit("radius must be positive");
  const double n = axis.norm();
  if (n == 0.0) throw InvalidOrbit("zero axis");
  return Orbit{axis / (n * std::sqrt(radius)), Vec3::Zero()};
}

OrbitGeometry orbit_geometry(const Orbit& o) {
  OrbitGeometry g;
  const double nl = o.l.norm();
  g.eccentricity = o.s.norm() / nl;
  g.semilatus = 1.0 / (nl * nl);
  if (g.eccentricity >= 1e-9) {
    const Vec3 e = o.s.cross(o.l) / (nl * nl);
    g.apogee_dir = -e.normalized();
    g.apogee_defined = true;
  }
  return g;
}

}  // namespace orbita
