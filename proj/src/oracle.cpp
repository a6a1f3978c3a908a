#include "orbita/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "orbita/errors.hpp"
#include "orbita/parallel.hpp"

namespace orbita {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kMinL = 1e-6;
constexpr double kGolden = 0.6180339887498949;

double combine(double d0, double d1, CostKind kind) {
  return kind == CostKind::f1 ? d0 + d1 : d0 * d0 + d1 * d1;
}

void check_config(const OracleConfig& cfg) {
  if (cfg.grid_points_per_dim < 8) throw std::invalid_argument("oracle: grid_points_per_dim must be >= 8");
  if (cfg.top_k < 1) throw std::invalid_argument("oracle: top_k must be >= 1");
  if (!(cfg.refine_tolerance > 0.0)) throw std::invalid_argument("oracle: refine_tolerance must be positive");
}

double grid_shift(unsigned seed) { return std::fmod(seed * kGolden, 1.0); }

/// Evaluates fn at every flattened index in parallel.
template <class Fn>
std::vector<double> fill_grid(std::size_t n, int threads, Fn fn) {
  std::vector<double> out(n);
  parallel_for(n, threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = fn(i);
  });
  return out;
}

/// Finite cells no worse than any axis neighbour, best first with the lowest
/// index breaking ties; at most k of them.
std::vector<std::size_t> local_minima(const std::vector<double>& cost, const std::vector<std::size_t>& dims,
                                      const std::vector<bool>& periodic, int k) {
  const std::size_t nd = dims.size();
  std::vector<std::size_t> stride(nd, 1);
  for (std::size_t d = nd; d-- > 1;) stride[d - 1] = stride[d] * dims[d];
  std::vector<std::size_t> found;
  for (std::size_t idx = 0; idx < cost.size(); ++idx) {
    const double c = cost[idx];
    if (!std::isfinite(c)) continue;
    bool is_min = true;
    for (std::size_t d = 0; d < nd && is_min; ++d) {
      const std::size_t i = (idx / stride[d]) % dims[d];
      for (int dir : {-1, 1}) {
        std::size_t j;
        if (dir < 0 && i == 0) {
          if (!periodic[d]) continue;
          j = dims[d] - 1;
        } else if (dir > 0 && i + 1 == dims[d]) {
          if (!periodic[d]) continue;
          j = 0;
        } else {
          j = i + dir;
        }
        if (cost[idx - i * stride[d] + j * stride[d]] < c) {
          is_min = false;
          break;
        }
      }
    }
    if (is_min) found.push_back(idx);
  }
  std::sort(found.begin(), found.end(), [&](std::size_t a, std::size_t b) {
    return cost[a] != cost[b] ? cost[a] < cost[b] : a < b;
  });
  if (found.size() > static_cast<std::size_t>(k)) found.resize(k);
  return found;
}

double grid_min(const std::vector<double>& v) {
  double m = kInf;
  for (double c : v) m = std::min(m, c);
  return m;
}

void check_planar(const Orbit& o) {
  if (std::abs(o.l.x()) > 1e-12 || std::abs(o.l.y()) > 1e-12 || std::abs(o.s.z()) > 1e-12)
    throw std::invalid_argument("planar oracle: orbits must have l along z");
  if (!(o.s.norm() < o.l.norm())) throw NotElliptic("planar oracle: orbit is not elliptic");
}

// Burn direction at angle t with the orbit's 1/r and velocity there.
struct Side {
  double x, y, k, wx, wy;
};

Side side(const Orbit& o, double t) {
  const Vec3 u(std::cos(t), std::sin(t), 0.0);
  const Vec3 w = velocity_at(o, u);
  return {u.x(), u.y(), radius_inverse(o, u), w.x(), w.y()};
}

struct Planar {
  double sx = 0.0, sy = 0.0, l = 0.0;
  double cost = kInf;
};

// Transfer with burns at a and b (not parallel), l1z = l.
Planar generic_transfer(const Side& a, const Side& b, double l, CostKind kind) {
  Planar p;
  const double cr = a.x * b.y - a.y * b.x;
  if (std::abs(cr) < 1e-9 || std::abs(l) < kMinL) return p;
  const double det = l * l * cr;
  const double r0 = a.k - l * l, r1 = b.k - l * l;
  p.sx = (r0 * l * b.x - l * a.x * r1) / det;
  p.sy = (l * b.y * r0 - l * a.y * r1) / det;
  p.l = l;
  if (!(p.sx * p.sx + p.sy * p.sy < l * l)) return p;
  // Nearly antipodal burns make the solve ill-conditioned; reject anything
  // that does not actually meet both radii.
  const double e0 = l * l + l * (p.sy * a.x - p.sx * a.y) - a.k;
  const double e1 = l * l + l * (p.sy * b.x - p.sx * b.y) - b.k;
  if (std::max(std::abs(e0), std::abs(e1)) > 1e-13 * std::max({1.0, a.k, b.k, l * l})) return p;
  const double d0 = std::hypot(a.wx - (p.sx - l * a.y), a.wy - (p.sy + l * a.x));
  const double d1 = std::hypot(b.wx - (p.sx - l * b.y), b.wy - (p.sy + l * b.x));
  p.cost = combine(d0, d1, kind);
  return p;
}

// Transfer with burns at a and b = -a. `frac` in (-1, 1) picks the free
// component of s along a; sign picks the sense of l.
Planar antipodal_transfer(const Side& a, const Side& b, double sign, double frac, CostKind kind) {
  Planar p;
  if (!(std::abs(frac) < 1.0)) return p;
  const double l = sign * std::sqrt(0.5 * (a.k + b.k));
  const double tau = (a.k - b.k) / (2.0 * l);
  const double room = l * l - tau * tau;
  if (!(room > 0.0)) return p;
  const double sigma = frac * std::sqrt(room);
  // s = sigma u + tau v with u = (a.x, a.y), v = z x u.
  p.sx = sigma * a.x - tau * a.y;
  p.sy = sigma * a.y + tau * a.x;
  p.l = l;
  const double d0 = std::hypot(a.wx - (p.sx - l * a.y), a.wy - (p.sy + l * a.x));
  const double d1 = std::hypot(b.wx - (p.sx - l * b.y), b.wy - (p.sy + l * b.x));
  p.cost = combine(d0, d1, kind);
  return p;
}

TransferPlan planar_plan(const Orbit& o0, const Orbit& o2, const Planar& p, const Side& a, const Side& b) {
  TransferPlan plan;
  plan.orbits = {o0, Orbit{Vec3(0, 0, p.l), Vec3(p.sx, p.sy, 0)}, o2};
  plan.burn_points = {Vec3(a.x, a.y, 0), Vec3(b.x, b.y, 0)};
  return plan;
}

}  // namespace

double coordinate_descent(const std::function<double(std::span<const double>)>& f, std::vector<double>& x,
                          std::vector<double> step, int max_sweeps, double min_step) {
  const std::size_t n = x.size();
  if (step.size() != n) throw std::invalid_argument("coordinate_descent: step size mismatch");
  double fx = f(x);
  std::vector<double> trial(n);
  auto along = [&](std::size_t i, double t) {
    trial = x;
    trial[i] += t;
    return f(trial);
  };
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const std::vector<double> start = x;
    for (std::size_t i = 0; i < n; ++i) {
      const double h = step[i];
      if (h <= 0.0) continue;
      const double tol = std::max(0.5 * min_step, h * 1e-10);
      double a = -h, b = h;
      double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
      double fc = along(i, c), fd = along(i, d);
      while (b - a > tol) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - kGolden * (b - a);
          fc = along(i, c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + kGolden * (b - a);
          fd = along(i, d);
        }
      }
      const double t = fc < fd ? c : d;
      const double ft = std::min(fc, fd);
      if (ft < fx) {
        x[i] += t;
        fx = ft;
      }
    }
    bool moved = false;
    trial = x;
    for (std::size_t i = 0; i < n; ++i) {
      trial[i] += x[i] - start[i];
      moved = moved || x[i] != start[i];
    }
    if (moved) {
      const double ft = f(trial);
      if (ft < fx) {
        x = trial;
        fx = ft;
      }
    }
    double largest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double move = std::abs(x[i] - start[i]);
      if (move < 0.25 * step[i]) step[i] *= 0.5;
      else if (move > 0.9 * step[i]) step[i] *= 2.0;
      largest = std::max(largest, step[i]);
    }
    if (largest < min_step) break;
  }
  return fx;
}

OracleResult planar_two_impulse_min(const Orbit& o0, const Orbit& o2, CostKind kind, const OracleConfig& cfg) {
  check_config(cfg);
  check_planar(o0);
  check_planar(o2);
  const std::size_t n = cfg.grid_points_per_dim;
  const double shift = grid_shift(cfg.seed);
  const double L = cfg.l_bound > 0.0 ? cfg.l_bound : 3.0 * std::max(o0.l.norm(), o2.l.norm());
  const double dtheta = kTwoPi / n;
  const double dl = 2.0 * L / n;
  auto theta = [&](std::size_t i) { return (i + shift) * dtheta; };
  auto lval = [&](std::size_t j) { return -L + (j + 0.5) * dl; };

  std::vector<Side> s0(n), s2(n), s2opp(n);
  for (std::size_t i = 0; i < n; ++i) {
    s0[i] = side(o0, theta(i));
    s2[i] = side(o2, theta(i));
    s2opp[i] = side(o2, theta(i) + kPi);
  }

  // Stratum A: (theta0, theta1, l), flattened row-major.
  const auto grid_a = fill_grid(n * n * n, cfg.threads, [&](std::size_t idx) {
    const std::size_t i0 = idx / (n * n), i1 = (idx / n) % n, j = idx % n;
    return generic_transfer(s0[i0], s2[i1], lval(j), kind).cost;
  });
  // Stratum B: (sign, theta0, frac).
  auto fval = [&](std::size_t j) { return -1.0 + (j + 0.5) * (2.0 / n); };
  const auto grid_b = fill_grid(2 * n * n, cfg.threads, [&](std::size_t idx) {
    const double sign = idx < n * n ? 1.0 : -1.0;
    const std::size_t r = idx % (n * n), i = r / n, j = r % n;
    return antipodal_transfer(s0[i], s2opp[i], sign, fval(j), kind).cost;
  });

  OracleResult best;
  best.cost = kInf;
  best.grid_cost = std::min(grid_min(grid_a), grid_min(grid_b));

  for (std::size_t idx : local_minima(grid_a, {n, n, n}, {true, true, false}, cfg.top_k)) {
    std::vector<double> x = {theta(idx / (n * n)), theta((idx / n) % n), lval(idx % n)};
    auto f = [&](std::span<const double> v) {
      return generic_transfer(side(o0, v[0]), side(o2, v[1]), v[2], kind).cost;
    };
    const double c = coordinate_descent(f, x, {dtheta, dtheta, dl}, cfg.refine_iterations, cfg.refine_tolerance);
    if (c < best.cost) {
      const Side a = side(o0, x[0]), b = side(o2, x[1]);
      best.cost = c;
      best.plan = planar_plan(o0, o2, generic_transfer(a, b, x[2], kind), a, b);
    }
  }
  for (const double sign : {1.0, -1.0}) {
    const std::size_t off = sign > 0 ? 0 : n * n;
    const std::vector<double> half(grid_b.begin() + off, grid_b.begin() + off + n * n);
    for (std::size_t idx : local_minima(half, {n, n}, {true, false}, cfg.top_k)) {
      std::vector<double> x = {theta(idx / n), fval(idx % n)};
      auto f = [&](std::span<const double> v) {
        return antipodal_transfer(side(o0, v[0]), side(o2, v[0] + kPi), sign, v[1], kind).cost;
      };
      const double c = coordinate_descent(f, x, {dtheta, 2.0 / n}, cfg.refine_iterations, cfg.refine_tolerance);
      if (c < best.cost) {
        const Side a = side(o0, x[0]), b = side(o2, x[0] + kPi);
        best.cost = c;
        best.plan = planar_plan(o0, o2, antipodal_transfer(a, b, sign, x[1], kind), a, b);
      }
    }
  }

  // Stratum C: a single burn point where both orbits have the same radius,
  // with the transfer orbit's velocity halfway between theirs.
  const std::size_t nc = 16 * n;
  auto gap = [&](double t) {
    const Side a = side(o0, t), b = side(o2, t);
    return a.k - b.k;
  };
  auto try_point = [&](double t) {
    const Side a = side(o0, t), b = side(o2, t);
    const double d = std::hypot(a.wx - b.wx, a.wy - b.wy);
    const double c = kind == CostKind::f1 ? d : 0.5 * d * d;
    best.grid_cost = std::min(best.grid_cost, c);
    if (!(c < best.cost)) return;
    const Vec3 u(a.x, a.y, 0);
    const Vec3 w(0.5 * (a.wx + b.wx), 0.5 * (a.wy + b.wy), 0);
    const Vec3 h = u.cross(w) / a.k;
    if (h.norm() < kMinAngularMomentum || !(w.squaredNorm() < 2.0 * a.k)) return;
    best.cost = c;
    best.plan.orbits = {o0, orbit_from_state(u / a.k, w), o2};
    best.plan.burn_points = {u, u};
  };
  double prev_t = shift * kTwoPi / nc, prev_g = gap(prev_t);
  for (std::size_t i = 1; i <= nc; ++i) {
    const double t = (i + shift) * kTwoPi / nc;
    const double g = gap(t);
    if (prev_g == 0.0 || std::abs(prev_g) < 1e-15) {
      try_point(prev_t);
    } else if ((prev_g < 0.0) != (g < 0.0) && g != 0.0) {
      double lo = prev_t, hi = t, glo = prev_g;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      try_point(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_g = g;
  }
  if (!std::isfinite(best.cost)) throw NoFeasible("planar oracle: no feasible transfer sampled");
  return best;
}

FixedEndpointResult fixed_endpoint_min(const LambertInput& in, CostKind kind, const OracleConfig& cfg, double l_lo,
                                       double l_hi) {
  check_config(cfg);
  const double k0 = 1.0 / in.r0.norm(), k1 = 1.0 / in.r1.norm();
  const Vec3 u0 = in.r0.normalized(), u1 = in.r1.normalized();
  const std::size_t n = cfg.grid_points_per_dim;
  FixedEndpointResult out;
  out.cost = kInf;
  out.grid_cost = kInf;

  auto finish = [&](const Vec3& w) {
    out.orbit1 = orbit_from_state(in.r0, w);
    out.w0star = w;
    out.w1 = velocity_at(out.orbit1, u1);
  };

  if (u0.cross(u1).norm() < kCollinearTolerance && u0.dot(u1) > 0.0) {
    // One burn point: any velocity w at r0 works.
    if (std::abs(k0 - k1) > 1e-9 * k0) throw NoFeasible("fixed endpoints: same direction, different radii");
    auto cost = [&](std::span<const double> v) {
      const Vec3 w(v[0], v[1], v[2]);
      if (!(w.squaredNorm() < 2.0 * k0) || in.r0.cross(w).norm() < kMinAngularMomentum) return kInf;
      return combine((in.w0 - w).norm(), (w - in.w1star).norm(), kind);
    };
    const double R = std::sqrt(2.0 * k0);
    Vec3 lo, hi;
    for (int c = 0; c < 3; ++c) {
      lo[c] = std::min({in.w0[c], in.w1star[c], -R});
      hi[c] = std::max({in.w0[c], in.w1star[c], R});
    }
    const Vec3 h = (hi - lo) / static_cast<double>(n);
    auto at = [&](std::size_t i, int c) { return lo[c] + (i + 0.5) * h[c]; };
    const auto grid = fill_grid(n * n * n, cfg.threads, [&](std::size_t idx) {
      const double v[3] = {at(idx / (n * n), 0), at((idx / n) % n, 1), at(idx % n, 2)};
      return cost(v);
    });
    out.grid_cost = grid_min(grid);
    for (std::size_t idx : local_minima(grid, {n, n, n}, {false, false, false}, cfg.top_k)) {
      std::vector<double> x = {at(idx / (n * n), 0), at((idx / n) % n, 1), at(idx % n, 2)};
      const double c = coordinate_descent(cost, x, {h[0], h[1], h[2]}, cfg.refine_iterations, cfg.refine_tolerance);
      if (c < out.cost) {
        out.cost = c;
        finish(Vec3(x[0], x[1], x[2]));
      }
    }
  } else if (u0.cross(u1).norm() < kCollinearTolerance) {
    // Opposite points: the tangential speed at r0 is fixed by the radius at
    // r1; the radial speed and the orbit plane are free.
    const Vec3 e1 = u0;
    const Vec3 e2 = (std::abs(e1.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(e1).normalized();
    const Vec3 e3 = e1.cross(e2);
    const double m = std::sqrt(2.0 * k0 * k0 / (k0 + k1));
    const double W = std::sqrt(2.0 * k0 * k1 / (k0 + k1));
    auto velocity = [&](double radial, double phi) {
      return Vec3(radial * e1 + m * (std::cos(phi) * e2 + std::sin(phi) * e3));
    };
    auto cost = [&](std::span<const double> v) {
      if (!(std::abs(v[0]) < W)) return kInf;
      const Vec3 w = velocity(v[0], v[1]);
      const Orbit o = orbit_from_state(in.r0, w);
      return combine((in.w0 - w).norm(), (velocity_at(o, u1) - in.w1star).norm(), kind);
    };
    const double dr = 2.0 * W / n, dphi = kTwoPi / n;
    const double shift = grid_shift(cfg.seed);
    auto rad = [&](std::size_t i) { return -W + (i + 0.5) * dr; };
    auto phi = [&](std::size_t j) { return (j + shift) * dphi; };
    const auto grid = fill_grid(n * n, cfg.threads, [&](std::size_t idx) {
      const double v[2] = {rad(idx / n), phi(idx % n)};
      return cost(v);
    });
    out.grid_cost = grid_min(grid);
    for (std::size_t idx : local_minima(grid, {n, n}, {false, true}, cfg.top_k)) {
      std::vector<double> x = {rad(idx / n), phi(idx % n)};
      const double c = coordinate_descent(cost, x, {dr, dphi}, cfg.refine_iterations, cfg.refine_tolerance);
      if (c < out.cost) {
        out.cost = c;
        finish(velocity(x[0], x[1]));
      }
    }
  } else {
    const auto [f, frame] = canonical_frame(in);
    auto cost = [&](double l) {
      if (std::abs(l) < kMinL || l < l_lo || l > l_hi) return kInf;
      const double sy = (f.k0 - l * l) / l;
      const double sx = (l * l + l * f.x1 * sy - f.k1) / (l * f.y1);
      if (!(sx * sx + sy * sy < l * l)) return kInf;
      const Vec3 v0(sx, sy + l, 0.0);
      const Vec3 v1(sx - l * f.y1, sy + l * f.x1, 0.0);
      return combine((f.w0 - v0).norm(), (v1 - f.w1star).norm(), kind);
    };
    if (l_lo == 0.0 && l_hi == 0.0) {
      double L = 3.0 * std::max(std::sqrt(k0), std::sqrt(k1));
      for (const auto& [r, w] : {std::pair{in.r0, in.w0}, std::pair{in.r1, in.w1star}}) {
        const double h = r.cross(w).norm();
        if (h > kMinAngularMomentum) L = std::max(L, 3.0 / h);
      }
      l_lo = -L;
      l_hi = L;
    }
    if (!(l_lo < l_hi)) throw std::invalid_argument("fixed_endpoint_min: empty l interval");
    // Log-spaced samples on each side of zero, kept sorted.
    std::vector<double> ls;
    auto log_side = [&](double a, double b, double sign, std::size_t count) {
      const double la = std::log(a), lb = std::log(b);
      for (std::size_t i = 0; i < count; ++i) ls.push_back(sign * std::exp(la + (lb - la) * (i + 0.5) / count));
    };
    const double floor_l = std::max(kMinL, 1e-4 * std::max(std::abs(l_lo), std::abs(l_hi)));
    const double neg_hi = std::max(floor_l, -l_hi), neg_lo = -l_lo;
    const double pos_lo = std::max(floor_l, l_lo), pos_hi = l_hi;
    const bool neg = neg_lo > neg_hi, pos = pos_hi > pos_lo;
    const std::size_t each = (neg && pos) ? n / 2 : n;
    if (neg) log_side(neg_hi, neg_lo, -1.0, each);
    if (pos) log_side(pos_lo, pos_hi, 1.0, each);
    std::sort(ls.begin(), ls.end());
    const auto grid = fill_grid(ls.size(), cfg.threads, [&](std::size_t i) { return cost(ls[i]); });
    out.grid_cost = grid_min(grid);
    for (std::size_t idx : local_minima(grid, {ls.size()}, {false}, cfg.top_k)) {
      const double gap = std::max(idx > 0 ? ls[idx] - ls[idx - 1] : 0.0, idx + 1 < ls.size() ? ls[idx + 1] - ls[idx] : 0.0);
      std::vector<double> x = {ls[idx]};
      const double c = coordinate_descent([&](std::span<const double> v) { return cost(v[0]); }, x, {gap},
                                          cfg.refine_iterations, cfg.refine_tolerance);
      if (c < out.cost) {
        out.cost = c;
        const double l = x[0];
        const double sy = (f.k0 - l * l) / l;
        const double sx = (l * l + l * f.x1 * sy - f.k1) / (l * f.y1);
        out.orbit1 = Orbit{frame.to_world(Vec3(0, 0, l)), frame.to_world(Vec3(sx, sy, 0))};
        out.w0star = velocity_at(out.orbit1, u0);
        out.w1 = velocity_at(out.orbit1, u1);
      }
    }
  }
  if (!std::isfinite(out.cost)) throw NoFeasible("fixed endpoints: no elliptic transfer in bounds");
  return out;
}

StationarityReport stationarity_check(const std::vector<poly::MPoly>& constraints, const poly::MPoly& cost,
                                      std::span<const double> point) {
  std::vector<std::string> vars = cost.variables();
  for (const auto& c : constraints) vars = poly::union_variables(vars, c.variables());
  if (point.size() != vars.size()) throw std::invalid_argument("stationarity_check: wrong number of values");
  auto gradient = [&](const poly::MPoly& p) {
    const poly::MPoly q = p.with_variables(vars);
    Eigen::VectorXd g(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) g[i] = q.partial(vars[i]).evaluate(point);
    return g;
  };
  const Eigen::VectorXd gq = gradient(cost);
  StationarityReport rep;
  if (constraints.empty()) {
    rep.gradient_residual = gq.norm();
    return rep;
  }
  Eigen::MatrixXd J(vars.size(), constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) J.col(i) = gradient(constraints[i]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd lambda = svd.solve(gq);
  rep.lambdas.assign(lambda.data(), lambda.data() + lambda.size());
  rep.gradient_residual = (gq - J * lambda).norm();
  rep.min_singular_value = svd.singularValues().minCoeff();
  return rep;
}

}  // namespace orbita
