#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>

#include "orbita/kepler.hpp"
#include "orbita/lambert.hpp"
#include "orbita/poly/mpoly.hpp"
#include "orbita/poly/rat_poly.hpp"
#include "orbita/errors.hpp"
#include "orbita/transfer.hpp"

namespace testsupport {

using orbita::Vec3;
using orbita::poly::MPoly;
using orbita::poly::Rat;
using orbita::poly::RatPoly;

/// Classical Hohmann delta-v (mu = 1) between circular radii r1 -> r2.
inline double classical_hohmann(double r1, double r2) {
  const double a = 0.5 * (r1 + r2);
  return std::abs(std::sqrt(2.0 / r1 - 1.0 / a) - std::sqrt(1.0 / r1)) +
         std::abs(std::sqrt(1.0 / r2) - std::sqrt(2.0 / r2 - 1.0 / a));
}

/// Classical bi-elliptic delta-v (mu = 1) through apoapsis rb.
inline double classical_bielliptic(double r1, double r2, double rb) {
  const double a1 = 0.5 * (r1 + rb), a2 = 0.5 * (r2 + rb);
  return std::abs(std::sqrt(2.0 / r1 - 1.0 / a1) - std::sqrt(1.0 / r1)) +
         std::abs(std::sqrt(2.0 / rb - 1.0 / a2) - std::sqrt(2.0 / rb - 1.0 / a1)) +
         std::abs(std::sqrt(2.0 / r2 - 1.0 / a2) - std::sqrt(1.0 / r2));
}

/// n / d in canonical form.
inline Rat frac(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline Vec3 random_unit(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  Vec3 v(n(g), n(g), n(g));
  return v.normalized();
}

inline Vec3 random_perp_unit(std::mt19937_64& g, const Vec3& axis) {
  Vec3 v = random_unit(g);
  v -= v.dot(axis) / axis.squaredNorm() * axis;
  return v.normalized();
}

/// Random elliptic orbit with |l| in [0.3, 2] and eccentricity below emax.
inline orbita::Orbit random_orbit(std::mt19937_64& g, double emax = 0.9) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Vec3 axis = random_unit(g);
  const double lnorm = 0.3 + 1.7 * u(g);
  const Vec3 l = lnorm * axis;
  const Vec3 s = (emax * u(g) * lnorm) * random_perp_unit(g, axis);
  return orbita::Orbit{l, s};
}

/// Uniform random rotation (quaternion method).
inline Eigen::Matrix3d random_rotation(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  Eigen::Quaterniond q(n(g), n(g), n(g), n(g));
  q.normalize();
  return q.toRotationMatrix();
}

/// Valid n-impulse plan: each next orbit passes through the burn point with a
/// random bound velocity.
inline orbita::TransferPlan random_plan(std::mt19937_64& g, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  orbita::TransferPlan p;
  p.orbits.push_back(random_orbit(g));
  while (static_cast<int>(p.burn_points.size()) < n) {
    const orbita::Orbit& a = p.orbits.back();
    const Vec3 rhat = random_perp_unit(g, a.l);
    const Vec3 r = rhat / orbita::radius_inverse(a, rhat);
    const double vmax = std::sqrt(2.0 / r.norm());
    const Vec3 w = (0.2 + 0.75 * u(g)) * vmax * random_unit(g);
    try {
      p.orbits.push_back(orbita::orbit_from_state(r, w));
      p.burn_points.push_back(rhat);
    } catch (const orbita::Error&) {
    }
  }
  return p;
}

/// The printed p3 of the fixed-endpoint problem as a polynomial in l1z.
/// Valid for x1^2 + y1^2 = 1.
inline RatPoly printed_p3(const Rat& k0, const Rat& k1, const Rat& x1, const Rat& y1, const Rat& w0x,
                          const Rat& w0y, const Rat& w1x, const Rat& w1y) {
  auto p = [](const Rat& v, int e) {
    Rat r = 1;
    for (int i = 0; i < e; ++i) r *= v;
    return r;
  };
  const Rat c4 = 2 * p(y1, 4);
  const Rat c3 = x1 * p(y1, 4) * w1y - x1 * p(y1, 3) * w0x + x1 * p(y1, 3) * w1x - p(y1, 5) * w1x +
                 p(y1, 4) * w1y - p(y1, 3) * w0x + p(y1, 3) * w1x;
  const Rat c1 = -(k0 * x1 * p(y1, 3) * w0x + k0 * x1 * p(y1, 3) * w1x - 2 * k0 * x1 * p(y1, 2) * w0y -
                   2 * k0 * x1 * p(y1, 2) * w1y - 2 * k0 * x1 * y1 * w0x - 2 * k0 * x1 * y1 * w1x +
                   k0 * p(y1, 4) * w0y + k0 * p(y1, 4) * w1y + 2 * k0 * p(y1, 3) * w0x +
                   2 * k0 * p(y1, 3) * w1x - 2 * k0 * p(y1, 2) * w0y - 2 * k0 * p(y1, 2) * w1y -
                   2 * k0 * y1 * w0x - 2 * k0 * y1 * w1x + 2 * k1 * x1 * y1 * w0x + 2 * k1 * x1 * y1 * w1x -
                   k1 * p(y1, 3) * w0x - k1 * p(y1, 3) * w1x + 2 * k1 * y1 * w0x + 2 * k1 * y1 * w1x);
  const Rat c0 = -(4 * k0 * k0 * x1 - 2 * k0 * k0 * y1 * y1 + 4 * k0 * k0 + 4 * k0 * k1 * x1 * y1 * y1 -
                   8 * k0 * k1 * x1 + 8 * k0 * k1 * y1 * y1 - 8 * k0 * k1 + 4 * k1 * k1 * x1 -
                   2 * k1 * k1 * y1 * y1 + 4 * k1 * k1);
  return RatPoly{c0, c1, Rat(0), c3, c4};
}

#ifdef ORBITA_CLI
/// Runs the CLI and returns its exit status; stdout goes to `out`.
inline int run_cli(const std::string& args, std::string* out = nullptr) {
  const std::string cmd = std::string(ORBITA_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::string text;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) text.append(buf.data(), n);
  const int status = pclose(pipe);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

}  // namespace testsupport
