#include <doctest.h>

#include "orbita/errors.hpp"
#include "orbita/kepler.hpp"
#include "support.hpp"

using namespace orbita;
using testsupport::random_orbit;
using testsupport::random_perp_unit;

TEST_SUITE("kepler") {
  TEST_CASE("orbit from h and e") {
    const Orbit c = orbit_from_h_e(Vec3(0, 0, 1), Vec3::Zero(), 1.0);
    CHECK(c.l.isApprox(Vec3(0, 0, 1)));
    CHECK(c.s.norm() == 0.0);

    // l = h / |h|^2 = (0, 0, 0.5) and s = l x e = (0, 0.25, 0).
    const Orbit o = orbit_from_h_e(Vec3(0, 0, 2), Vec3(0.5, 0, 0), 1.0);
    CHECK((o.l - Vec3(0, 0, 0.5)).norm() < 1e-15);
    CHECK((o.s - Vec3(0, 0.25, 0)).norm() < 1e-15);
    const auto [h, e] = orbit_to_h_e(o, 1.0);
    CHECK((h - Vec3(0, 0, 2)).norm() < 1e-12);
    CHECK((e - Vec3(0.5, 0, 0)).norm() < 1e-12);

    CHECK_THROWS_AS(orbit_from_h_e(Vec3(0, 0, 1), Vec3(1.2, 0, 0), 1.0), NotElliptic);
    CHECK_THROWS_AS(orbit_from_h_e(Vec3::Zero(), Vec3::Zero(), 1.0), DegenerateOrbit);
  }

  TEST_CASE("orbit to h and e") {
    const auto [h, e] = orbit_to_h_e(Orbit{Vec3(0, 0, 1), Vec3::Zero()}, 1.0);
    CHECK(h.isApprox(Vec3(0, 0, 1)));
    CHECK(e.norm() == 0.0);
    const Orbit o{Vec3(0, 0.6, 0.8), Vec3(0.3, 0, 0)};
    CHECK(orbit_to_h_e(o, 4.0).first.norm() == doctest::Approx(2.0 * orbit_to_h_e(o, 1.0).first.norm()));

    std::mt19937_64 g(101);
    for (int i = 0; i < 100; ++i) {
      const Orbit a = random_orbit(g);
      const auto [hh, ee] = orbit_to_h_e(a, 2.5);
      const Orbit b = orbit_from_h_e(hh, ee, 2.5);
      CHECK((a.l - b.l).norm() <= 1e-12 * a.l.norm());
      CHECK((a.s - b.s).norm() <= 1e-12 * a.l.norm());
    }
  }

  TEST_CASE("checked construction") {
    CHECK_THROWS_AS(make_orbit(Vec3(0, 0, 1), Vec3(0.5, 0, 0.5)), InvalidOrbit);
    CHECK_THROWS_AS(make_orbit(Vec3(0, 0, 1), Vec3(1.0, 0, 0)), NotElliptic);
    CHECK_THROWS_AS(make_orbit(Vec3(0, 0, 1e-10), Vec3::Zero()), DegenerateOrbit);
    // Tiny non-orthogonality is projected away.
    const Orbit o = make_orbit(Vec3(0, 0, 1), Vec3(0.5, 0, 1e-14));
    CHECK(o.s.z() == 0.0);
    CHECK_THROWS_AS(make_point(o, Vec3(0, 0, 1)), InvalidOrbit);
  }

  TEST_CASE("radius and velocity examples") {
    const Orbit c{Vec3(0, 0, 1), Vec3::Zero()};
    CHECK(radius_inverse(c, Vec3(0.6, 0.8, 0)) == doctest::Approx(1.0));
    CHECK(velocity_at(c, Vec3(1, 0, 0)).isApprox(Vec3(0, 1, 0)));

    const double s0y = 0.3;
    const Orbit o{Vec3(0, 0, 1), Vec3(0, s0y, 0)};
    CHECK(radius_inverse(o, Vec3(1, 0, 0)) == doctest::Approx(1.0 + s0y).epsilon(1e-15));

    // Perigee and apogee of an e = 0.5 orbit.
    const Orbit e5{Vec3(0, 0, 1), Vec3(0.5, 0, 0)};
    const auto geo = orbit_geometry(e5);
    const double r_apo = 1.0 / radius_inverse(e5, geo.apogee_dir);
    const double r_peri = 1.0 / radius_inverse(e5, -geo.apogee_dir);
    CHECK(r_apo / r_peri == doctest::Approx(3.0).epsilon(1e-14));

    // Reversing l flips the tangential part of w.
    const Vec3 r(1, 0, 0);
    const Orbit rev{-o.l, o.s};
    CHECK((velocity_at(o, r) - o.s).isApprox(-(velocity_at(rev, r) - rev.s)));
  }

  TEST_CASE("circular orbits and geometry") {
    CHECK(circular_orbit(1.0, Vec3(0, 0, 1)).l.isApprox(Vec3(0, 0, 1)));
    CHECK(circular_orbit(4.0, Vec3(0, 0, 3)).l.norm() == doctest::Approx(0.5));
    CHECK(circular_orbit(2.0, Vec3(0, 0, -1)).l.isApprox(Vec3(0, 0, -1 / std::sqrt(2.0))));

    const auto circ = orbit_geometry(circular_orbit(1.0, Vec3(0, 0, 1)));
    CHECK(circ.eccentricity == 0.0);
    CHECK_FALSE(circ.apogee_defined);
    CHECK(orbit_geometry(Orbit{Vec3(0, 0, 1), Vec3(0.5, 0, 0)}).eccentricity == doctest::Approx(0.5));
    CHECK(orbit_geometry(Orbit{Vec3(0, 0, 0.5), Vec3::Zero()}).semilatus == doctest::Approx(4.0));
  }

  TEST_CASE("conic, momentum and energy identities on random orbits") {
    std::mt19937_64 g(202);
    for (int i = 0; i < 1000; ++i) {
      const Orbit o = random_orbit(g);
      const auto [h, e] = orbit_to_h_e(o, 1.0);
      const double p = orbit_geometry(o).semilatus;
      const double ecc = e.norm();
      double energy0 = 0.0;
      for (int k = 0; k < 16; ++k) {
        const Vec3 rhat = random_perp_unit(g, o.l);
        const double k_inv = radius_inverse(o, rhat);
        REQUIRE(k_inv > 0.0);
        const Vec3 r = rhat / k_inv;
        const Vec3 w = velocity_at(o, rhat);
        // |r| + e.r = p
        CHECK(std::abs(r.norm() + e.dot(r) - p) <= 1e-10 * std::max(1.0, p));
        // r x w = h (mu = 1)
        CHECK((r.cross(w) - h).norm() <= 1e-10 * std::max(1.0, h.norm()));
        const double energy = 0.5 * w.squaredNorm() - k_inv;
        if (k == 0) energy0 = energy;
        CHECK(std::abs(energy - energy0) <= 1e-10 * std::max(1.0, std::abs(energy0)));
        // 1 - e^2 = -2 E |h|^2
        CHECK(std::abs(1.0 - ecc * ecc + 2.0 * energy * h.squaredNorm()) <= 1e-10);
      }
    }
  }

  TEST_CASE("velocity is rotation equivariant") {
    std::mt19937_64 g(303);
    for (int i = 0; i < 100; ++i) {
      const Orbit o = random_orbit(g);
      const Vec3 rhat = random_perp_unit(g, o.l);
      const Eigen::Matrix3d R = testsupport::random_rotation(g);
      const Orbit ro{R * o.l, R * o.s};
      CHECK((velocity_at(ro, R * rhat) - R * velocity_at(o, rhat)).norm() < 1e-12);
    }
  }
}
