#include <doctest.h>

#include "orbita/errors.hpp"
#include "orbita/hohmann.hpp"
#include "orbita/oracle.hpp"
#include "orbita/rotated.hpp"
#include "support.hpp"

using namespace orbita;
using poly::MPoly;
using poly::Rat;

TEST_SUITE("oracle") {
  TEST_CASE("deterministic and monotone") {
    const Orbit a = circular_orbit(1.0, Vec3::UnitZ()), b = circular_orbit(2.0, Vec3::UnitZ());
    OracleConfig cfg;
    cfg.grid_points_per_dim = 32;
    const auto r1 = planar_two_impulse_min(a, b, CostKind::f1, cfg);
    const auto r2 = planar_two_impulse_min(a, b, CostKind::f1, cfg);
    CHECK(r1.cost == r2.cost);
    CHECK(r1.plan.orbits[1].l == r2.plan.orbits[1].l);
    CHECK(r1.plan.burn_points[0] == r2.plan.burn_points[0]);
    CHECK(r1.cost <= r1.grid_cost);
    CHECK(validate_plan(r1.plan, 1e-9).valid);
    CHECK(r1.cost == doctest::Approx(testsupport::classical_hohmann(1.0, 2.0)).epsilon(1e-6));

    cfg.seed = 3;
    const auto shifted = planar_two_impulse_min(a, b, CostKind::f1, cfg);
    CHECK(shifted.cost <= shifted.grid_cost);
    CHECK(shifted.cost == doctest::Approx(r1.cost).epsilon(1e-6));
  }

  TEST_CASE("identical orbits cost nothing") {
    const Orbit o{Vec3(0, 0, 1), Vec3(0.2, 0.1, 0)};
    OracleConfig cfg;
    cfg.grid_points_per_dim = 16;
    CHECK(planar_two_impulse_min(o, o, CostKind::f1, cfg).cost < 1e-9);
    CHECK(planar_two_impulse_min(o, o, CostKind::f2, cfg).cost < 1e-12);
  }

  TEST_CASE("doubling the grid does not raise the minimum") {
    const auto in = params_from_angle(0.5, 90.0);
    const auto [o0, o2] = rotated_orbits(in);
    OracleConfig cfg;
    cfg.grid_points_per_dim = 24;
    const double coarse = planar_two_impulse_min(o0, o2, CostKind::f1, cfg).cost;
    cfg.grid_points_per_dim = 48;
    const double fine = planar_two_impulse_min(o0, o2, CostKind::f1, cfg).cost;
    CHECK(fine <= coarse + 1e-9);
    CHECK(best_rotated_transfer(in).winner.f1 == doctest::Approx(fine).epsilon(1e-5));
  }

  TEST_CASE("config validation") {
    const Orbit a = circular_orbit(1.0, Vec3::UnitZ());
    OracleConfig cfg;
    cfg.grid_points_per_dim = 4;
    CHECK_THROWS_AS(planar_two_impulse_min(a, a, CostKind::f1, cfg), std::invalid_argument);
    cfg = {};
    cfg.refine_tolerance = 0.0;
    CHECK_THROWS_AS(planar_two_impulse_min(a, a, CostKind::f1, cfg), std::invalid_argument);
  }

  TEST_CASE("fixed endpoint oracle") {
    LambertInput in;
    in.r0 = Vec3(1, 0, 0);
    in.r1 = Vec3(0, 1, 0);
    in.w0 = Vec3(0, 1, 0);
    in.w1star = Vec3(-1, 0, 0);
    OracleConfig cfg;
    cfg.grid_points_per_dim = 2000;
    const auto o = fixed_endpoint_min(in, CostKind::f2, cfg);
    // The circular orbit through both points is already the target.
    CHECK(o.cost < 1e-12);
    CHECK(o.cost <= o.grid_cost);
    CHECK_THROWS_AS(fixed_endpoint_min(in, CostKind::f2, cfg, 5.0, 6.0), NoFeasible);
  }

  TEST_CASE("stationarity check") {
    const std::vector<std::string> v{"x", "y"};
    const MPoly x = MPoly::variable(v, "x"), y = MPoly::variable(v, "y");
    const MPoly q = (x - Rat(1)) * (x - Rat(1)) + (y + Rat(2)) * (y + Rat(2));
    const std::vector<double> at{1.0, -2.0};
    const auto r0 = stationarity_check({}, q, at);
    CHECK(r0.gradient_residual < 1e-10);
    CHECK(r0.min_singular_value == 0.0);

    // Minimum of x + y on the unit circle.
    const MPoly c = x * x + y * y - Rat(1);
    const double h = std::sqrt(0.5);
    const std::vector<double> p{-h, -h};
    const auto r1 = stationarity_check({c}, x + y, p);
    CHECK(r1.gradient_residual < 1e-12);
    REQUIRE(r1.lambdas.size() == 1);
    CHECK(r1.lambdas[0] == doctest::Approx(-h).epsilon(1e-12));
    CHECK(r1.min_singular_value > 1.0);
    const std::vector<double> off{std::cos(M_PI * 1.25 + 1e-3), std::sin(M_PI * 1.25 + 1e-3)};
    CHECK(stationarity_check({c}, x + y, off).gradient_residual > 1e-4);
  }

  TEST_CASE("Hohmann solution is stationary under its constraints") {
    // f1 = d0 + d1 with d_i^2 = |Delta_i|^2, burns at (x0, y0) and (x1, y1),
    // circular radii 1 -> 4.
    const std::vector<std::string> v{"l", "sx", "sy", "x0", "y0", "x1", "y1", "d0", "d1"};
    auto V = [&](const char* n) { return MPoly::variable(v, n); };
    const MPoly l = V("l"), sx = V("sx"), sy = V("sy"), x0 = V("x0"), y0 = V("y0"), x1 = V("x1"), y1 = V("y1"),
                d0 = V("d0"), d1 = V("d1");
    const Rat l2(1, 2);
    const MPoly a0x = sx - (l - Rat(1)) * y0, a0y = sy + (l - Rat(1)) * x0;
    const MPoly a1x = (l - l2) * y1 - sx, a1y = (l - l2) * x1 * Rat(-1) - sy;
    const std::vector<MPoly> cons{x0 * x0 + y0 * y0 - Rat(1), x1 * x1 + y1 * y1 - Rat(1),
                                  l * l + l * (sy * x0 - sx * y0) - Rat(1), l * l + l * (sy * x1 - sx * y1) - Rat(1, 4),
                                  d0 * d0 - a0x * a0x - a0y * a0y, d1 * d1 - a1x * a1x - a1y * a1y};
    const auto sol = best_transfer(1.0, 4.0, 1, 1);
    const Orbit& o = sol.plan.orbits[1];
    const Vec3 b0 = sol.plan.burn_points[0], b1 = sol.plan.burn_points[1];
    const auto cost = impulses(sol.plan);
    const std::vector<double> pt{o.l.z(), o.s.x(), o.s.y(), b0.x(), b0.y(), b1.x(), b1.y(), cost.deltas[0], cost.deltas[1]};
    for (const auto& c : cons) CHECK(std::abs(c.evaluate(std::span<const double>(pt))) < 1e-12);
    const auto rep = stationarity_check(cons, d0 + d1, pt);
    CHECK(rep.gradient_residual < 1e-8);
    CHECK(rep.min_singular_value > 1e-3);
  }

  TEST_CASE("coordinate descent") {
    auto f = [](std::span<const double> x) { return (x[0] - 0.3) * (x[0] - 0.3) + 2 * (x[1] + 0.1) * (x[1] + 0.1); };
    std::vector<double> x{1.0, 1.0};
    const double v = coordinate_descent(f, x, {0.5, 0.5}, 200);
    CHECK(v < 1e-20);
    CHECK(x[0] == doctest::Approx(0.3).epsilon(1e-9));
    std::vector<double> y{0.3, -0.1};
    CHECK(coordinate_descent(f, y, {0.5, 0.5}, 10) <= f(std::vector<double>{0.3, -0.1}));
  }
}
