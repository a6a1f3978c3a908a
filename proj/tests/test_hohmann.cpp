#include <doctest.h>

#include "orbita/hohmann.hpp"
#include "orbita/oracle.hpp"
#include "support.hpp"

using namespace orbita;

namespace {

// Real roots of a^4 + 2a^3 + 2a + 1 by sign changes and bisection in doubles.
std::vector<double> bracketed_window_roots() {
  auto q = [](double a) { return (((a + 2.0) * a + 0.0) * a + 2.0) * a + 1.0; };
  std::vector<double> roots;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    double lo = -4.0 + 4.0 * i / n, hi = -4.0 + 4.0 * (i + 1) / n;
    if ((q(lo) < 0) == (q(hi) < 0)) continue;
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (lo + hi);
      if ((q(mid) < 0) == (q(lo) < 0)) lo = mid; else hi = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

}  // namespace

TEST_SUITE("hohmann") {
  TEST_CASE("coplanar closed form against the classical formula") {
    for (double ratio : {1.5, 2.0, 4.0, 10.0, 20.0}) {
      const HohmannInput in{1.0, 1.0 / std::sqrt(ratio)};
      const auto sols = solve_coplanar(in);
      REQUIRE(sols.size() == 2);
      const auto& opt = sols[0].optimal ? sols[0] : sols[1];
      CHECK(opt.f1 == doctest::Approx(testsupport::classical_hohmann(1.0, ratio)).epsilon(1e-12));
      CHECK(validate_plan(opt.plan, 1e-12).valid);
      CHECK(opt.plan.orbits[1].l.z() > 0);
    }
    const auto same = solve_coplanar({1.0, 1.0});
    CHECK(std::min(same[0].f1, same[1].f1) < 1e-15);

    const auto h = solve_coplanar({1.0, 1.0 / std::sqrt(2.0)});
    const auto& o = h[0].optimal ? h[0] : h[1];
    CHECK(o.plan.orbits[1].l.z() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
    CHECK(o.plan.orbits[1].s.y() == doctest::Approx(std::sqrt(3.0) / 6).epsilon(1e-14));
    CHECK(o.f1 == doctest::Approx(0.284457).epsilon(1e-6));
  }

  TEST_CASE("counter-rotating coplanar tie") {
    const auto sols = solve_coplanar({1.0, -1.0});
    REQUIRE(sols.size() == 2);
    CHECK(sols[0].tie);
    CHECK(sols[1].tie);
    CHECK(sols[0].f1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sols[1].f1 == doctest::Approx(2.0).epsilon(1e-14));
  }

  TEST_CASE("out-of-plane window") {
    const auto [a1, a2] = out_of_plane_window();
    const auto br = bracketed_window_roots();
    REQUIRE(br.size() == 2);
    CHECK(std::abs(a1 - br[0]) < 1e-12);
    CHECK(std::abs(a2 - br[1]) < 1e-12);
    // The quartic is palindromic, so the roots are reciprocal.
    CHECK(a1 * a2 == doctest::Approx(1.0).epsilon(1e-14));

    CHECK(solve_out_of_plane({1.0, 0.5}).empty());
    for (int i = 0; i < 50; ++i) {
      const double edge = i < 25 ? a1 : a2;
      const double off = (i % 25 - 12) * 1e-3 + ((i % 25) == 12 ? 1e-9 : 0.0);
      const double r = edge + off;
      const bool inside = r > a1 && r < a2;
      CHECK(solve_out_of_plane({1.0, r}).empty() == !inside);
      CHECK(solve_out_of_plane({-2.0, -2.0 * r}).empty() == !inside);
    }
  }

  TEST_CASE("out-of-plane example and dominance") {
    const auto sols = solve_out_of_plane({1.0, -1.0});
    REQUIRE(sols.size() == 2);
    // The l1z numerator 1 - 1 + 4 - 4 + 1 - 1 vanishes: a polar orbit.
    for (const auto& s : sols) {
      CHECK(s.plan.orbits[1].l.z() == 0.0);
      CHECK(std::abs(s.plan.orbits[1].l.y()) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(s.f1 == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
      CHECK(validate_plan(s.plan, 1e-12).valid);
    }
    CHECK(sols[0].plan.orbits[1].l.y() == doctest::Approx(-sols[1].plan.orbits[1].l.y()));

    const auto [a1, a2] = out_of_plane_window();
    for (int i = 1; i < 40; ++i) {
      const double r = a1 + (a2 - a1) * i / 40.0;
      const auto oop = solve_out_of_plane({1.0, r});
      REQUIRE(oop.size() == 2);
      const auto cop = solve_coplanar({1.0, r});
      const double best = std::min(cop[0].f1, cop[1].f1);
      for (const auto& s : oop) {
        CHECK(s.f1 > best);
        CHECK(validate_plan(s.plan, 1e-12).valid);
      }
    }
  }

  TEST_CASE("same radius cases") {
    CHECK(solve_same_radius_cases({0.7, 0.7}).f1 == 0.0);
    CHECK(solve_same_radius_cases({0.7, 0.7}).branch == HohmannBranch::same_orbit);
    const auto rev = solve_same_radius_cases({1.0, -1.0});
    CHECK(rev.branch == HohmannBranch::reversal);
    CHECK(rev.f1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(validate_plan(rev.plan, 1e-12).valid);
    CHECK(solve_same_radius_cases({2.0, -2.0}).f1 == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(solve_same_radius_cases({1.0, 0.5}), std::invalid_argument);
    CHECK(best_transfer(1.0, 1.0, 1, -1).f1 == doctest::Approx(2.0).epsilon(1e-15));
  }

  TEST_CASE("bi-elliptic undercuts Hohmann at ratio 15") {
    const double rb = 80.0, r2 = 15.0;
    const double ea = (rb - 1.0) / (rb + 1.0), pa = 2.0 * rb / (rb + 1.0);
    const double eb = (rb - r2) / (rb + r2), pb = 2.0 * rb * r2 / (rb + r2);
    const TransferPlan bi{{circular_orbit(1.0, Vec3::UnitZ()),
                           orbit_from_h_e(Vec3(0, 0, std::sqrt(pa)), Vec3(ea, 0, 0), 1.0),
                           orbit_from_h_e(Vec3(0, 0, std::sqrt(pb)), Vec3(eb, 0, 0), 1.0),
                           circular_orbit(r2, Vec3::UnitZ())},
                          {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(1, 0, 0)}};
    REQUIRE(validate_plan(bi, 1e-12).valid);
    const double fbi = impulses(bi).f1;
    CHECK(fbi == doctest::Approx(testsupport::classical_bielliptic(1.0, r2, rb)).epsilon(1e-12));
    const auto h = best_transfer(1.0, r2, 1, 1);
    CHECK(h.f1 == doctest::Approx(testsupport::classical_hohmann(1.0, r2)).epsilon(1e-12));
    CHECK(fbi < h.f1);
  }

  TEST_CASE("planar oracle never beats best_transfer") {
    OracleConfig cfg;
    cfg.grid_points_per_dim = 48;
    for (auto [r2, d2] : {std::pair{2.0, 1}, {5.0, 1}, {1.3, -1}, {3.0, -1}}) {
      const auto best = best_transfer(1.0, r2, 1, d2);
      CHECK(validate_plan(best.plan, 1e-12).valid);
      const auto o = planar_two_impulse_min(circular_orbit(1.0, Vec3::UnitZ()),
                                            circular_orbit(r2, Vec3(0, 0, d2)), CostKind::f1, cfg);
      CHECK(o.cost >= best.f1 * (1.0 - 1e-6));
      CHECK(o.cost <= o.grid_cost);
    }
  }

  TEST_CASE("all transfers are valid") {
    for (int d2 : {1, -1})
      for (double r2 : {0.5, 1.0, 2.0, 7.0}) {
        const auto all = all_transfers(1.0, r2, 1, d2);
        REQUIRE_FALSE(all.empty());
        const auto best = best_transfer(1.0, r2, 1, d2);
        for (const auto& s : all) {
          if (s.feasible) CHECK(validate_plan(s.plan, 1e-12).valid);
          CHECK(s.f1 >= best.f1);
        }
      }
  }
}
