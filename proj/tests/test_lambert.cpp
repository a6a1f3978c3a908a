#include <doctest.h>

#include "orbita/errors.hpp"
#include "orbita/lambert.hpp"
#include "orbita/oracle.hpp"
#include "support.hpp"

using namespace orbita;
using poly::MPoly;
using poly::Rat;
using poly::RatPoly;

namespace {

const std::vector<std::string> kVars{"sx", "sy", "l"};

struct ExactInstance {
  Rat k0, k1, x1, y1, w0x, w0y, w0z, w1x, w1y, w1z;
};

// The framed system written out from the velocity and radius formulas.
LambertSystem exact_system(const ExactInstance& in) {
  const MPoly sx = MPoly::variable(kVars, "sx"), sy = MPoly::variable(kVars, "sy"), l = MPoly::variable(kVars, "l");
  const MPoly d0x = sx - in.w0x;
  const MPoly d0y = sy + l - in.w0y;
  const MPoly d1x = (sx * Rat(-1)) + l * in.y1 + in.w1x;
  const MPoly d1y = (sy * Rat(-1)) - l * in.x1 + in.w1y;
  LambertSystem s;
  s.q = d0x * d0x + d0y * d0y + d1x * d1x + d1y * d1y + (in.w0z * in.w0z + in.w1z * in.w1z);
  s.q1 = l * l + l * sy - in.k0;
  s.q2 = l * l + l * (sy * in.x1 - sx * in.y1) - in.k1;
  const MPoly* f[3] = {&s.q, &s.q1, &s.q2};
  MPoly m[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = f[i]->partial(kVars[j]);
  s.jacobian = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return s;
}

Rat small_rat(std::mt19937_64& g) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6);
  return testsupport::frac(num(g), den(g));
}

double eval3(const MPoly& p, double sx, double sy, double l) {
  const std::vector<double> v{sx, sy, l};
  return p.evaluate(std::span<const double>(v));
}

LambertInput random_instance(std::mt19937_64& g) {
  std::uniform_real_distribution<double> rad(0.5, 2.0), u(0.0, 1.0);
  LambertInput in;
  in.r0 = rad(g) * testsupport::random_unit(g);
  in.r1 = rad(g) * testsupport::random_unit(g);
  in.w0 = (0.3 + 0.6 * u(g)) * std::sqrt(1.0 / in.r0.norm()) * testsupport::random_unit(g);
  in.w1star = (0.3 + 0.6 * u(g)) * std::sqrt(1.0 / in.r1.norm()) * testsupport::random_unit(g);
  return in;
}

const LambertSolution* flagged(const std::vector<LambertSolution>& sols) {
  for (const auto& s : sols)
    if (s.is_minimum) return &s;
  return nullptr;
}

}  // namespace

TEST_SUITE("lambert") {
  TEST_CASE("canonical frame") {
    LambertInput in;
    in.r0 = Vec3(1, 0, 0);
    in.r1 = Vec3(0, 2, 0);
    const auto [f, frame] = canonical_frame(in);
    CHECK(frame.R.isApprox(Eigen::Matrix3d::Identity()));
    CHECK(f.k1 == doctest::Approx(0.5));

    in.r0 = Vec3(0, 2, 0);
    in.r1 = Vec3(-3, 0, 0);
    in.w0 = Vec3(0.1, 0.2, 0.3);
    const auto [g, fr] = canonical_frame(in);
    CHECK((fr.to_frame(in.r0.normalized()) - Vec3(1, 0, 0)).norm() < 1e-15);
    const Vec3 r1 = fr.to_frame(in.r1.normalized());
    CHECK(std::abs(r1.z()) < 1e-15);
    CHECK(r1.y() > 0);
    CHECK(r1.x() == doctest::Approx(g.x1));
    CHECK(std::abs(fr.R.determinant() - 1.0) < 1e-14);
    CHECK((fr.to_world(g.w0) - in.w0).norm() < 1e-15);

    in.r1 = Vec3(0, -5, 0);
    CHECK_THROWS_AS(canonical_frame(in), CollinearInput);
  }

  TEST_CASE("the derived system matches its definition") {
    const FramedLambert f{0.75, 1.25, 0.0, 1.0, Vec3(0.5, -0.25, 0.125), Vec3(-0.375, 0.5, 0.0)};
    const LambertSystem a = build_lambert_system(f);
    const LambertSystem b = exact_system({Rat(3, 4), Rat(5, 4), Rat(0), Rat(1), Rat(1, 2), Rat(-1, 4), Rat(1, 8),
                                          Rat(-3, 8), Rat(1, 2), Rat(0)});
    CHECK(a.q == b.q);
    CHECK(a.q1 == b.q1);
    CHECK(a.q2 == b.q2);
    CHECK(a.jacobian == b.jacobian);
  }

  TEST_CASE("eliminant is the printed quartic up to a constant") {
    std::mt19937_64 g(31);
    std::uniform_int_distribution<int> mn(1, 9);
    int checked = 0;
    while (checked < 20) {
      const int m = mn(g), n = mn(g);
      if (m == n) continue;
      ExactInstance in{Rat(abs(small_rat(g)) + Rat(1, 4)), Rat(abs(small_rat(g)) + Rat(1, 4)),
                       testsupport::frac(m * m - n * n, m * m + n * n), testsupport::frac(2 * m * n, m * m + n * n),
                       small_rat(g), small_rat(g), small_rat(g), small_rat(g), small_rat(g), small_rat(g)};
      const RatPoly ours = lambert_eliminant(exact_system(in));
      const RatPoly printed = testsupport::printed_p3(in.k0, in.k1, in.x1, in.y1, in.w0x, in.w0y, in.w1x, in.w1y);
      CHECK(ours.degree() == 4);
      CHECK(printed.leading() == 2 * in.y1 * in.y1 * in.y1 * in.y1);
      CHECK(ours.monic() == printed.monic());
      ++checked;
    }
  }

  TEST_CASE("symmetric instance") {
    const FramedLambert f{1.0, 1.0, 0.0, 1.0, Vec3(0, 1, 0), Vec3(-1, 0, 0)};
    const LambertSystem sys = build_lambert_system(f);
    const auto sols = solve_general(f);
    REQUIRE_FALSE(sols.empty());
    for (const auto& s : sols) {
      CHECK(std::abs(eval3(sys.q1, s.s1x, s.s1y, s.l1z)) < 1e-10);
      CHECK(std::abs(eval3(sys.q2, s.s1x, s.s1y, s.l1z)) < 1e-10);
      CHECK(s.stationarity_residual < 1e-8);
      // The Jacobian minor l^2 y1 of (q1, q2) is nonzero.
      CHECK(s.l1z * s.l1z * f.y1 > 1e-6);
    }
    LambertInput in;
    in.w0 = f.w0;
    in.w1star = f.w1star;
    const auto all = solve_lambert(in);
    const LambertSolution* best = flagged(all);
    REQUIRE(best != nullptr);
    OracleConfig cfg;
    cfg.grid_points_per_dim = 100000;
    const auto o = fixed_endpoint_min(in, CostKind::f2, cfg);
    CHECK(best->f2 <= o.grid_cost + 1e-12);
    CHECK(best->f2 == doctest::Approx(o.cost).epsilon(1e-6));
  }

  TEST_CASE("aligned same") {
    LambertInput in;
    in.r0 = Vec3(1, 0, 0);
    in.r1 = Vec3(1, 0, 0);
    in.w0 = Vec3(1, 0, 0);
    in.w1star = Vec3(0, 1, 0);
    const auto s = solve_aligned_same(in);
    CHECK(s.w0star == Vec3(0.5, 0.5, 0));
    CHECK(s.w1 == s.w0star);
    CHECK(s.f2 == doctest::Approx(0.5 * (in.w1star - in.w0).squaredNorm()));
    in.w1star = in.w0 = Vec3(0.2, 0.9, 0);
    CHECK(solve_aligned_same(in).f2 == 0.0);
    in.r1 = Vec3(2, 0, 0);
    CHECK_THROWS_AS(solve_aligned_same(in), RadiusMismatch);
  }

  TEST_CASE("aligned opposite closed form") {
    LambertInput in;
    in.r0 = Vec3(1, 0, 0);
    in.r1 = Vec3(-1, 0, 0);
    in.w0 = Vec3(0, 1, 0);
    in.w1star = Vec3(0, -1, 0);
    auto s = solve_aligned_opposite(in);
    CHECK((s.w0star - Vec3(0, 1, 0)).norm() < 1e-15);
    CHECK(s.f2 < 1e-30);

    in.r1 = Vec3(-0.5, 0, 0);  // k1 = 2
    s = solve_aligned_opposite(in);
    CHECK(s.w0star.y() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(s.w1.y() == doctest::Approx(-1.2).epsilon(1e-15));

    in.w0 = Vec3(0.3, 0.8, 0.1);
    in.w1star = Vec3(-0.5, -0.6, 0.2);
    s = solve_aligned_opposite(in);
    CHECK(s.w0star.x() == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(s.w0star.y() == doctest::Approx((0.8 - 2 * -0.6) / 5).epsilon(1e-15));
    CHECK(s.w0star.z() == doctest::Approx((0.1 - 2 * 0.2) / 5).epsilon(1e-15));

    // Central differences of f2 over w0* vanish at the closed form.
    auto f2 = [&](const Vec3& w) {
      const double c = 2.0;
      const Vec3 w1(w.x(), -c * w.y(), -c * w.z());
      return (w - in.w0).squaredNorm() + (in.w1star - w1).squaredNorm();
    };
    for (int i = 0; i < 3; ++i) {
      Vec3 h = Vec3::Zero();
      h[i] = 1e-6;
      CHECK(std::abs((f2(s.w0star + h) - f2(s.w0star - h)) / 2e-6) < 1e-8);
    }
  }

  TEST_CASE("aligned opposite feasible variant reaches r1") {
    LambertInput in;
    in.r0 = Vec3(1, 0, 0);
    in.r1 = Vec3(-0.5, 0, 0);
    in.w0 = Vec3(0, 1, 0);
    in.w1star = Vec3(0, -1, 0);
    const auto s = solve_aligned_opposite_feasible(in);
    CHECK(s.radius_residual < 1e-12);
    CHECK(s.w0star.y() == doctest::Approx(std::sqrt(2.0 / 3.0)));
    const auto all = solve_lambert(in);
    const LambertSolution* best = flagged(all);
    REQUIRE(best != nullptr);
    CHECK(best->radius_residual < 1e-9);
  }

  TEST_CASE("random instances against the one-dimensional oracle") {
    std::mt19937_64 g(32);
    OracleConfig cfg;
    cfg.grid_points_per_dim = 4000;
    int solved = 0;
    for (int t = 0; t < 60; ++t) {
      const LambertInput in = random_instance(g);
      std::vector<LambertSolution> sols;
      try {
        sols = solve_lambert(in);
      } catch (const NoEllipticCandidate&) {
        CHECK_THROWS_AS(fixed_endpoint_min(in, CostKind::f2, cfg, -6.0, 6.0), NoFeasible);
        continue;
      }
      const auto [f, frame] = canonical_frame(in);
      const LambertSystem sys = build_lambert_system(f);
      for (const auto& s : sols) {
        CHECK(std::abs(eval3(sys.q1, s.s1x, s.s1y, s.l1z)) < 1e-10);
        CHECK(std::abs(eval3(sys.q2, s.s1x, s.s1y, s.l1z)) < 1e-10);
        CHECK(s.stationarity_residual < 1e-8);
        CHECK(s.orbit1.s.norm() < s.orbit1.l.norm());
      }
      const LambertSolution* best = flagged(sols);
      REQUIRE(best != nullptr);
      const auto o = fixed_endpoint_min(in, CostKind::f2, cfg, -6.0, 6.0);
      CHECK(best->f2 <= o.cost + 1e-6);
      // Frame invariance: the same instance in a rotated world.
      const Eigen::Matrix3d R = testsupport::random_rotation(g);
      const LambertInput rin{R * in.r0, R * in.r1, R * in.w0, R * in.w1star};
      const auto rsols = solve_lambert(rin);
      const LambertSolution* rbest = flagged(rsols);
      REQUIRE(rbest != nullptr);
      CHECK(std::abs(rbest->f2 - best->f2) <= 1e-10 * std::max(1.0, best->f2));
      ++solved;
    }
    CHECK(solved > 40);
  }
}
