#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "numeric.hpp"
#include "orbita/errors.hpp"
#include "orbita/oracle.hpp"
#include "orbita/poly/resultant.hpp"
#include "orbita/poly/roots.hpp"
#include "orbita/rotated.hpp"
#include "orbita/rotated_system.hpp"

namespace orbita {

using poly::MPoly;
using poly::Rat;
using poly::RatPoly;

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

void note(RotatedLog* log, std::string msg) {
  if (log) log->push_back(std::move(msg));
}

double realized_angle(long a, long b) {
  const double A = static_cast<double>(a), B = static_cast<double>(b);
  return 2.0 * std::atan2(A * A - B * B, 2.0 * A * B) * kDeg;
}

void require_s0x(const RotatedInput& in, const char* what) {
  if (in.s0x == 0) throw DegenerateGeometry(std::string(what) + ": requires s0x != 0");
}

/// Value of p at named coordinates; unnamed variables read as zero.
double eval_named(const MPoly& p, std::initializer_list<std::pair<const char*, double>> at) {
  std::vector<double> v(p.variables().size(), 0.0);
  for (const auto& [name, value] : at)
    if (p.has_variable(name)) v[p.index_of(name)] = value;
  return p.evaluate(std::span<const double>(v));
}

RatPoly univariate_at(const MPoly& p, std::initializer_list<std::pair<const char*, double>> at,
                      const char* keep) {
  MPoly q = p;
  for (const auto& [name, value] : at) q = q.substitute(name, poly::rat_from_double(value));
  return q.to_univariate(keep);
}

double rel_value(const RatPoly& p, double x) {
  double v = 0.0, s = 0.0, xp = 1.0;
  for (int i = 0; i <= p.degree(); ++i) {
    const double c = p.coeff(i).get_d();
    v += c * xp;
    s += std::abs(c * xp);
    xp *= x;
  }
  return s > 0.0 ? std::abs(v) / s : 0.0;
}

/// Root of the linear remainder of the Euclidean chain of a and b, or, if the
/// chain collapses, the real root of a that best satisfies b. When one of the
/// two vanishes identically every real root of the other is returned.
std::vector<double> common_roots(const RatPoly& a, const RatPoly& b, const char* var, RotatedLog* log) {
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) {
      note(log, std::string("both equations vanish on this fiber; no ") + var);
      return {};
    }
    note(log, std::string("one equation vanishes on this fiber; trying every root in ") + var);
    const RatPoly& p = a.is_zero() ? b : a;
    std::vector<double> out;
    if (p.degree() < 1) return out;
    for (const auto& iv : poly::isolate_real_roots(p)) out.push_back(poly::refine_root(p, iv));
    return out;
  }
  const std::vector<std::string> vars{var};
  try {
    const auto [u1, u0] = poly::euclidean_last_linear(MPoly::from_univariate(a, vars, var),
                                                      MPoly::from_univariate(b, vars, var), var);
    const Rat c1 = u1.to_univariate(var).coeff(0), c0 = u0.to_univariate(var).coeff(0);
    if (c1 != 0) return {Rat(-c0 / c1).get_d()};
  } catch (const ChainCollapse&) {
    note(log, std::string("euclidean chain collapsed in ") + var + "; matching roots instead");
  }
  if (a.degree() < 1) return {};
  double best = std::numeric_limits<double>::quiet_NaN(), err = std::numeric_limits<double>::infinity();
  for (const auto& iv : poly::isolate_real_roots(a)) {
    const double r = poly::refine_root(a, iv);
    const double e = rel_value(b, r);
    if (e < err) {
      err = e;
      best = r;
    }
  }
  return {best};
}

struct Burns {
  double x0, y0, x1, y1;
};

std::optional<RotatedCandidate> make_candidate(const RotatedInput& in, const Burns& p, double l, double s1x,
                                               double s1y, RotatedCase tag, RotatedLog* log) {
  const auto [o0, o2] = rotated_orbits(in);
  RotatedCandidate c;
  c.case_tag = tag;
  c.plan.orbits = {o0, Orbit{Vec3(0, 0, l), Vec3(s1x, s1y, 0)}, o2};
  c.plan.burn_points = {Vec3(p.x0, p.y0, 0).normalized(), Vec3(p.x1, p.y1, 0).normalized()};
  const std::string tag_s = to_string(tag);
  if (!std::isfinite(l) || !std::isfinite(s1x) || !std::isfinite(s1y)) {
    note(log, tag_s + ": non-finite candidate dropped");
    return std::nullopt;
  }
  if (!(std::hypot(s1x, s1y) < std::abs(l))) {
    note(log, tag_s + ": non-elliptic candidate dropped (l1z = " + std::to_string(l) + ")");
    return std::nullopt;
  }
  const auto v = validate_plan(c.plan, 1e-9);
  if (!v.valid) {
    note(log, tag_s + ": candidate failed " + v.first_violation);
    return std::nullopt;
  }
  c.f1 = impulses_unchecked(c.plan).f1;
  c.max_residual = rotated_max_residual(c.plan, in);
  c.separation_angle_deg = separation_angle(c, in);
  return c;
}

}  // namespace

std::string to_string(RotatedCase c) {
  switch (c) {
    case RotatedCase::case2a_axis: return "case2a_axis";
    case RotatedCase::case2a_general: return "case2a_general";
    case RotatedCase::case2b_closed: return "case2b_closed";
    case RotatedCase::case2b_general: return "case2b_general";
    case RotatedCase::case1: return "case1";
  }
  return "?";
}

RotatedInput params_from_angle(double e, double alpha_deg) {
  if (!(e >= 0.0 && e < 1.0)) throw std::invalid_argument("params_from_angle: need 0 <= e < 1");
  if (!(alpha_deg > 0.0 && alpha_deg <= 180.0)) throw std::invalid_argument("params_from_angle: need 0 < alpha <= 180");
  long a = 1, b = 0;
  if (alpha_deg < 180.0) {
    // alpha = 4 atan(a / b) - 180 degrees.
    const double t = std::tan((alpha_deg + 180.0) / 4.0 / kDeg);
    bool found = false;
    for (long bb = 1; bb <= 1000000 && !found; ++bb) {
      double best_err = 0.01;
      for (long aa : {static_cast<long>(std::floor(bb * t)), static_cast<long>(std::ceil(bb * t))}) {
        if (aa <= bb) continue;
        const double err = std::abs(realized_angle(aa, bb) - alpha_deg);
        if (err < best_err) {
          best_err = err;
          a = aa;
          b = bb;
          found = true;
        }
      }
    }
    if (!found) throw std::invalid_argument("params_from_angle: no integer pair found");
  }
  RotatedInput in;
  in.e = poly::rationalize(e, 1e-12);
  const Rat A(a), B(b);
  const Rat den = A * A + B * B;
  in.s0x = in.e * (A * A - B * B) / den;
  in.s0y = in.e * 2 * A * B / den;
  in.a = a;
  in.b = b;
  in.alpha_deg = b == 0 ? 180.0 : realized_angle(a, b);
  in.circular = in.e == 0;
  return in;
}

RotatedInput rotated_input(const Rat& s0x, const Rat& s0y) {
  const Rat e2 = s0x * s0x + s0y * s0y;
  if (e2 >= 1) throw NotElliptic("rotated input: s0x^2 + s0y^2 must be < 1");
  RotatedInput in;
  in.s0x = s0x;
  in.s0y = s0y;
  in.e = poly::rationalize(std::sqrt(e2.get_d()), 1e-12);
  in.alpha_deg = 2.0 * std::atan2(s0x.get_d(), s0y.get_d()) * kDeg;
  in.circular = e2 == 0;
  return in;
}

std::pair<Orbit, Orbit> rotated_orbits(const RotatedInput& in) {
  const double sx = in.s0x.get_d(), sy = in.s0y.get_d();
  return {Orbit{Vec3(0, 0, 1), Vec3(sx, sy, 0)}, Orbit{Vec3(0, 0, 1), Vec3(-sx, sy, 0)}};
}

double rotated_max_residual(const TransferPlan& plan, const RotatedInput& in) {
  if (plan.orbits.size() != 3 || plan.burn_points.size() != 2)
    throw InvalidPlan("rotated residual: need a two-impulse plan");
  const double s0x = in.s0x.get_d(), s0y = in.s0y.get_d();
  const double l = plan.orbits[1].l.z(), sx = plan.orbits[1].s.x(), sy = plan.orbits[1].s.y();
  const double x0 = plan.burn_points[0].x(), y0 = plan.burn_points[0].y();
  const double x1 = plan.burn_points[1].x(), y1 = plan.burn_points[1].y();
  const auto cost = impulses_unchecked(plan);
  const double d0 = cost.deltas[0], d1 = cost.deltas[1];
  const double r[6] = {
      x0 * x0 + y0 * y0 - 1.0,
      x1 * x1 + y1 * y1 - 1.0,
      l * l + l * (x0 * sy - y0 * sx) - 1.0 - x0 * s0y + y0 * s0x,
      l * l + l * (x1 * sy - y1 * sx) - 1.0 - x1 * s0y - y1 * s0x,
      d0 * d0 - ((s0x - sx) * (s0x - sx) + (s0y - sy) * (s0y - sy) + (1 - l) * (1 - l) +
                 2 * (1 - l) * (x0 * (s0y - sy) - y0 * (s0x - sx))),
      d1 * d1 - ((s0x + sx) * (s0x + sx) + (s0y - sy) * (s0y - sy) + (1 - l) * (1 - l) +
                 2 * (1 - l) * (x1 * (s0y - sy) + y1 * (s0x + sx))),
  };
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

double separation_angle(const RotatedCandidate& c, const RotatedInput& in) {
  const auto geo = orbit_geometry(rotated_orbits(in).first);
  if (!geo.apogee_defined) return std::numeric_limits<double>::quiet_NaN();
  const double d = std::clamp(geo.apogee_dir.dot(c.plan.burn_points.at(0).normalized()), -1.0, 1.0);
  return std::acos(d) * kDeg;
}

std::vector<RotatedCandidate> case2a_axis_solutions(const RotatedInput& in, RotatedLog* log) {
  const double s0x = in.s0x.get_d(), s0y = in.s0y.get_d();
  std::vector<RotatedCandidate> out;
  for (const double sign : {1.0, -1.0}) {
    const double l = std::sqrt(1.0 - sign * s0x);
    auto c = make_candidate(in, {0.0, sign, 0.0, -sign}, l, 0.0, s0y, RotatedCase::case2a_axis, log);
    if (!c) continue;
    c->f1 = 2.0 * std::abs(1.0 - sign * s0x - l);
    c->note = sign > 0 ? "y0 = +1" : "y0 = -1";
    out.push_back(std::move(*c));
  }
  return out;
}

std::vector<RotatedCandidate> case2a_general(const RotatedInput& in, RotatedLog* log) {
  require_s0x(in, "case2a_general");
  const auto sys = build_case2a_system(in.s0x, in.s0y);
  const auto el = eliminate_case2a(sys, in.s0x, in.s0y);
  const double s0x = in.s0x.get_d(), s0y = in.s0y.get_d();
  const detail::CompiledSystem polish({sys.eq1, sys.eq7, sys.eq8}, {"x0", "y0", "l"});
  std::vector<RotatedCandidate> out;
  for (const auto& iv : poly::isolate_real_roots(el.pol20, Rat(-1), Rat(1))) {
    const double y0 = poly::refine_root(el.pol20, iv, 1e-15);
    if (y0 == 0.0 || std::abs(y0) >= 1.0) continue;
    const double q1 = eval_named(el.q1, {{"y0", y0}}), q0 = eval_named(el.q0, {{"y0", y0}});
    const double circle = std::sqrt(1.0 - y0 * y0);
    double x0 = -q0 / q1;
    if (!std::isfinite(x0)) {
      note(log, "case2a_general: q1 vanished at y0 = " + std::to_string(y0));
      x0 = circle;
    }
    x0 = std::copysign(circle, x0);
    const auto at = {std::pair{"x0", x0}, std::pair{"y0", y0}};
    const double x0_start = x0;
    for (double l : common_roots(univariate_at(sys.eq7, at, "l"), univariate_at(sys.eq8, at, "l"), "l", log)) {
      if (!std::isfinite(l) || l == 0.0) {
        note(log, "case2a_general: no l1z for y0 = " + std::to_string(y0));
        continue;
      }
      x0 = x0_start;
      Eigen::VectorXd x(3);
      x << x0, y0, l;
      detail::solve_lm(polish, x, 20);
      x0 = x[0];
      const double y = x[1];
      l = x[2];
      const double s1y = (1.0 + x0 * s0y - y * s0x - l * l) / (l * x0);
      auto c = make_candidate(in, {x0, y, x0, -y}, l, 0.0, s1y, RotatedCase::case2a_general, log);
      if (c) out.push_back(std::move(*c));
    }
  }
  return out;
}

std::vector<RotatedCandidate> case2b_solutions(const RotatedInput& in, RotatedLog* log) {
  require_s0x(in, "case2b_solutions");
  const double s0x = in.s0x.get_d(), s0y = in.s0y.get_d();
  std::vector<RotatedCandidate> out;
  if (auto c = make_candidate(in, {1.0, 0.0, -1.0, 0.0}, 1.0, 0.0, s0y, RotatedCase::case2b_closed, log)) {
    c->note = "l1z = 1 family, any s1x in [-|s0x|, |s0x|] has the same f1";
    out.push_back(std::move(*c));
  }
  if (auto c = make_candidate(in, {1.0, 0.0, -1.0, 0.0}, -1.0, -s0x * s0y, -s0y, RotatedCase::case2b_closed, log)) {
    c->note = "l1z = -1";
    c->dominated = true;
    out.push_back(std::move(*c));
  }

  const auto sys = build_case2b_system(in.s0x, in.s0y);
  const auto el = eliminate_case2b(sys);
  auto emit = [&](double x0, double l, double s) {
    const double y0 = (1.0 - l * l) / s0x;
    const double s1x = x0 * (l * s - s0y) * s0x / (l * (1.0 - l * l));
    if (auto c = make_candidate(in, {x0, y0, -x0, -y0}, l, s1x, s, RotatedCase::case2b_general, log))
      out.push_back(std::move(*c));
  };
  auto roots_of = [&](const RatPoly& p) {
    std::vector<double> ls;
    for (const auto& iv : poly::isolate_real_roots(p)) {
      const double l = poly::refine_root(p, iv, 1e-15);
      if (std::abs(l) < 1e-12 || std::abs(std::abs(l) - 1.0) < 1e-12) continue;
      const double y0 = (1.0 - l * l) / s0x;
      if (std::abs(y0) > 1.0) {
        note(log, "case2b_general: x0 not real for l1z = " + std::to_string(l));
        continue;
      }
      ls.push_back(l);
    }
    return ls;
  };

  const detail::CompiledSystem polish({sys.eq9, el.eq10, el.eq11}, {"x0", "s", "l"});
  for (const double l0 : roots_of(el.core)) {
    const double y0 = (1.0 - l0 * l0) / s0x;
    for (const double sign : {1.0, -1.0}) {
      const double x0 = sign * std::sqrt(std::max(0.0, 1.0 - y0 * y0));
      const auto at = {std::pair{"x0", x0}, std::pair{"l", l0}};
      for (const double s : common_roots(univariate_at(el.eq10, at, "s"), univariate_at(el.eq11, at, "s"), "s", log)) {
        if (!std::isfinite(s)) continue;
        Eigen::VectorXd v(3);
        v << x0, s, l0;
        detail::solve_lm(polish, v, 20);
        emit(v[0], v[2], v[1]);
      }
    }
  }
  if (el.symmetric_branch) {
    const MPoly g = el.g0_on_axis;
    const detail::CompiledSystem axis_polish({sys.eq9, g}, {"x0", "s", "l"});
    for (const double l0 : roots_of(el.axis_core)) {
      const double y0 = (1.0 - l0 * l0) / s0x;
      for (const double sign : {1.0, -1.0}) {
        const double x0 = sign * std::sqrt(std::max(0.0, 1.0 - y0 * y0));
        if (std::abs(eval_named(g, {{"x0", x0}, {"l", l0}})) >
            1e-8 * std::max(1.0, std::abs(eval_named(g, {{"x0", -x0}, {"l", l0}}))))
          continue;
        emit(x0, l0, 0.0);
      }
    }
  }
  return out;
}

RotatedResult best_rotated_transfer(const RotatedInput& in, const RotatedCases& cases, const Case1Config& case1) {
  RotatedResult res;
  auto add = [&](std::vector<RotatedCandidate> v) {
    for (auto& c : v) res.all.push_back(std::move(c));
  };
  if (cases.case2a) add(case2a_axis_solutions(in, &res.log));
  if (in.s0x != 0) {
    if (cases.case2a) add(case2a_general(in, &res.log));
    if (cases.case2b) add(case2b_solutions(in, &res.log));
    if (cases.case1) add(case1_numeric(in, case1, &res.log));
  }
  if (res.all.empty()) throw NoFeasible("rotated: no candidate survived validation");
  std::stable_sort(res.all.begin(), res.all.end(), [](const RotatedCandidate& a, const RotatedCandidate& b) {
    if (a.f1 != b.f1) return a.f1 < b.f1;
    return static_cast<int>(a.case_tag) < static_cast<int>(b.case_tag);
  });
  res.winner = res.all.front();
  return res;
}

double apogee_to_apogee_cost(const RotatedInput& in) {
  if (in.circular) throw DegenerateGeometry("apogee transfer: circular orbits have no apogee");
  if (in.s0x == 0) throw DegenerateGeometry("apogee transfer: the apogees coincide");
  const auto [o0, o2] = rotated_orbits(in);
  const Vec3 u0 = orbit_geometry(o0).apogee_dir, u1 = orbit_geometry(o2).apogee_dir;
  const double k0 = radius_inverse(o0, u0), k1 = radius_inverse(o2, u1);
  const Vec3 w0 = velocity_at(o0, u0), w2 = velocity_at(o2, u1);
  auto cost_of = [&](double l, const Vec3& s) {
    const Orbit t{Vec3(0, 0, l), s};
    if (!(s.norm() < std::abs(l))) return std::numeric_limits<double>::infinity();
    return (velocity_at(t, u0) - w0).norm() + (velocity_at(t, u1) - w2).norm();
  };
  std::function<double(std::span<const double>)> f;
  std::vector<double> grid;
  const double cr = u0.x() * u1.y() - u0.y() * u1.x();
  if (std::abs(cr) < 1e-12) {
    // Opposite apogees: l1z^2 = (k0 + k1) / 2, s1 = sigma u0 + tau (z x u0).
    const Vec3 v = Vec3::UnitZ().cross(u0);
    f = [&, cost_of](std::span<const double> x) {
      const double l = x[0] > 0 ? std::sqrt(0.5 * (k0 + k1)) : -std::sqrt(0.5 * (k0 + k1));
      const double tau = (k0 - k1) / (2.0 * l);
      return cost_of(l, x[1] * u0 + tau * v);
    };
    double best = std::numeric_limits<double>::infinity();
    for (const double sign : {1.0, -1.0}) {
      const double L = std::sqrt(0.5 * (k0 + k1));
      const int n = 4000;
      std::vector<double> xs(n), cs(n);
      for (int i = 0; i < n; ++i) {
        xs[i] = -L + (i + 0.5) * 2.0 * L / n;
        const double p[2] = {sign, xs[i]};
        cs[i] = f(p);
      }
      for (int i = 0; i < n; ++i) {
        if (!std::isfinite(cs[i]) || (i > 0 && cs[i - 1] < cs[i]) || (i + 1 < n && cs[i + 1] < cs[i])) continue;
        std::vector<double> x = {sign, xs[i]};
        best = std::min(best, coordinate_descent(f, x, {0.0, 2.0 * L / n}, 200));
      }
    }
    return best;
  }
  // s1 from the two radius conditions at fixed l1z.
  auto solve = [&, cost_of](double l) {
    if (std::abs(l) < 1e-9) return std::numeric_limits<double>::infinity();
    const double det = l * l * cr;
    const double r0 = k0 - l * l, r1 = k1 - l * l;
    const double sx = (r0 * l * u1.x() - l * u0.x() * r1) / det;
    const double sy = (l * u1.y() * r0 - l * u0.y() * r1) / det;
    return cost_of(l, Vec3(sx, sy, 0));
  };
  f = [&](std::span<const double> x) { return solve(x[0]); };
  const double L = 3.0 * std::sqrt(std::max(k0, k1)) + 3.0;
  double best = std::numeric_limits<double>::infinity();
  for (const double sign : {1.0, -1.0}) {
    const int n = 4000;
    std::vector<double> xs(n), cs(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = sign * L * std::exp(std::log(1e-4) * (1.0 - (i + 0.5) / n));
      cs[i] = solve(xs[i]);
    }
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(cs[i]) || (i > 0 && cs[i - 1] < cs[i]) || (i + 1 < n && cs[i + 1] < cs[i])) continue;
      const double gap = std::abs(xs[std::min(i + 1, n - 1)] - xs[std::max(i - 1, 0)]);
      std::vector<double> x = {xs[i]};
      best = std::min(best, coordinate_descent(f, x, {gap}, 200));
    }
  }
  if (!std::isfinite(best)) throw NoFeasible("apogee transfer: no elliptic connecting orbit");
  return best;
}

std::vector<RotatedCandidate> case1_numeric(const RotatedInput& in, const Case1Config& cfg, RotatedLog* log) {
  const std::vector<std::string> vars{"x0", "y0", "x1", "y1", "sx", "sy", "l", "d0", "d1",
                                      "m1", "m2", "m3", "m4", "m5", "m6", "k"};
  auto V = [&](const char* n) { return MPoly::variable(vars, n); };
  const MPoly x0 = V("x0"), y0 = V("y0"), x1 = V("x1"), y1 = V("y1"), sx = V("sx"), sy = V("sy"), l = V("l"),
              d0 = V("d0"), d1 = V("d1"), k = V("k");
  const Rat& ax = in.s0x;
  const Rat& ay = in.s0y;
  const MPoly one = MPoly::constant(vars, 1);
  const MPoly ol = one - l;
  const std::vector<MPoly> eqs = {
      x0 * x0 + y0 * y0 - one,
      x1 * x1 + y1 * y1 - one,
      l * l + l * (x0 * sy - y0 * sx) - one - ay * x0 + ax * y0,
      l * l + l * (x1 * sy - y1 * sx) - one - ay * x1 - ax * y1,
      d0 * d0 - ((ax - sx) * (ax - sx) + (ay - sy) * (ay - sy) + ol * ol +
                 Rat(2) * ol * (x0 * (ay - sy) - y0 * (ax - sx))),
      d1 * d1 - ((ax + sx) * (ax + sx) + (ay - sy) * (ay - sy) + ol * ol +
                 Rat(2) * ol * (x1 * (ay - sy) + y1 * (ax + sx))),
  };
  const std::vector<std::string> primary(vars.begin(), vars.begin() + 9);
  // Stationarity of d0 + d1 - sum m_i eq_i in the nine primary unknowns.
  std::vector<MPoly> system;
  const MPoly cost = d0 + d1;
  for (const auto& v : primary) {
    MPoly g = cost.partial(v);
    for (std::size_t i = 0; i < eqs.size(); ++i) g -= MPoly::variable(vars, "m" + std::to_string(i + 1)) * eqs[i].partial(v);
    system.push_back(std::move(g));
  }
  for (const auto& e : eqs) system.push_back(e);
  system.push_back(one - k * (y0 + y1));
  const detail::CompiledSystem sys(system, vars);

  std::vector<detail::CompiledPoly> eq_c;
  std::vector<std::vector<detail::CompiledPoly>> jac_c(eqs.size());
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    eq_c.emplace_back(eqs[i]);
    for (const auto& v : primary) jac_c[i].emplace_back(eqs[i].partial(v));
  }

  const double s0x = ax.get_d(), s0y = ay.get_d();
  const double g1 = 0.7548776662466927, g2 = 0.5698402909980532, g3 = 0.4301597090019468;
  std::vector<RotatedCandidate> out;
  std::vector<Eigen::VectorXd> found;
  int seeds = 0;
  for (long n = 0; seeds < cfg.seeds && n < 200L * cfg.seeds; ++n) {
    const double t0 = 2 * std::numbers::pi * std::fmod(0.5 + n * g1, 1.0);
    const double t1 = 2 * std::numbers::pi * std::fmod(0.5 + n * g2, 1.0);
    const double lv = -2.0 + 4.0 * std::fmod(0.5 + n * g3, 1.0);
    const double c0 = std::cos(t0), n0 = std::sin(t0), c1 = std::cos(t1), n1 = std::sin(t1);
    if (std::abs(lv) < 0.2 || std::abs(n0 + n1) < 1e-3) continue;
    const double cr = c0 * n1 - n0 * c1;
    if (std::abs(cr) < 1e-3) continue;
    // eq3, eq4 are linear in (sx, sy) at fixed burn points and l.
    const double r0 = 1.0 + c0 * s0y - n0 * s0x - lv * lv, r1 = 1.0 + c1 * s0y + n1 * s0x - lv * lv;
    const double det = lv * lv * cr;
    const double vsx = (r0 * lv * c1 - lv * c0 * r1) / det;
    const double vsy = (lv * n1 * r0 - lv * n0 * r1) / det;
    if (!(std::hypot(vsx, vsy) < std::abs(lv))) continue;
    ++seeds;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(16);
    x.head(7) << c0, n0, c1, n1, vsx, vsy, lv;
    x[7] = 1.0;
    x[8] = 1.0;
    x[15] = 1.0 / (n0 + n1);
    {
      // Impulses from eq5, eq6 with d = 0, then least-squares multipliers.
      Eigen::VectorXd z = x;
      z[7] = z[8] = 0.0;
      x[7] = std::sqrt(std::max(1e-12, -eq_c[4](z.data())));
      x[8] = std::sqrt(std::max(1e-12, -eq_c[5](z.data())));
      Eigen::MatrixXd J(9, 6);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 9; ++j) J(j, i) = jac_c[i][j](x.data());
      Eigen::VectorXd g = Eigen::VectorXd::Zero(9);
      g[7] = g[8] = 1.0;
      x.segment(9, 6) = J.colPivHouseholderQr().solve(g);
    }
    const double res = detail::solve_lm(sys, x, cfg.max_iterations, 1e-13);
    if (!(res < 1e-10)) continue;
    if (std::abs(x[1] + x[3]) <= 1e-6 || x[7] <= 0.0 || x[8] <= 0.0) continue;
    bool dup = false;
    for (const auto& f : found) dup = dup || (f.head(7) - x.head(7)).norm() < 1e-7;
    if (dup) continue;
    found.push_back(x);
    auto c = make_candidate(in, {x[0], x[1], x[2], x[3]}, x[6], x[4], x[5], RotatedCase::case1, log);
    if (!c) continue;
    if (c->max_residual > 1e-9) {
      note(log, "case1: candidate residual " + std::to_string(c->max_residual) + " too large");
      continue;
    }
    out.push_back(std::move(*c));
  }
  return out;
}

}  // namespace orbita
