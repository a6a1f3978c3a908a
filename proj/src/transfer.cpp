#include "orbita/transfer.hpp"

#include <cmath>
#include <stdexcept>

#include "orbita/errors.hpp"

namespace orbita {

namespace {

void check_structure(const TransferPlan& p) {
  if (p.burn_points.empty()) throw InvalidPlan("plan has no impulses");
  if (p.orbits.size() != p.burn_points.size() + 1)
    throw InvalidPlan("plan needs exactly one more orbit than impulses");
}

}  // namespace

PlanValidation validate_plan(const TransferPlan& p, double tol) {
  check_structure(p);
  PlanValidation v;
  auto add = [&](std::string name, double value, bool margin) {
    v.residuals.push_back({std::move(name), value, margin});
  };
  for (std::size_t i = 0; i < p.orbits.size(); ++i) {
    const auto& o = p.orbits[i];
    const std::string tag = "orbit[" + std::to_string(i) + "].";
    add(tag + "l_dot_s", std::abs(o.l.dot(o.s)), false);
    add(tag + "ellipticity_margin", o.l.norm() - o.s.norm(), true);
  }
  for (std::size_t i = 0; i < p.burn_points.size(); ++i) {
    const Vec3& r = p.burn_points[i];
    const Orbit& a = p.orbits[i];
    const Orbit& b = p.orbits[i + 1];
    const std::string tag = "burn[" + std::to_string(i) + "].";
    add(tag + "unit_norm", std::abs(r.squaredNorm() - 1.0), false);
    add(tag + "in_plane_before", std::abs(r.dot(a.l)), false);
    add(tag + "in_plane_after", std::abs(r.dot(b.l)), false);
    add(tag + "radius_match", std::abs(radius_inverse(a, r) - radius_inverse(b, r)), false);
  }
  v.valid = true;
  for (const auto& r : v.residuals) {
    const bool ok = r.is_margin ? r.value > 0.0 : r.value < tol;
    if (!r.is_margin) v.max_equality_residual = std::max(v.max_equality_residual, r.value);
    if (!ok || !std::isfinite(r.value)) {
      if (v.valid) v.first_violation = r.name;
      v.valid = false;
    }
  }
  return v;
}

CostReport impulses_unchecked(const TransferPlan& p) {
  CostReport c;
  c.deltas.reserve(p.burn_points.size());
  for (std::size_t i = 0; i < p.burn_points.size(); ++i) {
    const Vec3& r = p.burn_points[i];
    const double d = (velocity_at(p.orbits[i], r) - velocity_at(p.orbits[i + 1], r)).norm();
    c.deltas.push_back(d);
    c.f1 += d;
    c.f2 += d * d;
  }
  return c;
}

CostReport impulses(const TransferPlan& p, double tol) {
  const auto v = validate_plan(p, tol);
  if (!v.valid) throw InvalidPlan("constraint violated: " + v.first_violation);
  return impulses_unchecked(p);
}

double delta_squared_identity(const TransferPlan& p, std::size_t i) {
  const Vec3 ds = p.orbits[i].s - p.orbits[i + 1].s;
  const Vec3 dl = p.orbits[i].l - p.orbits[i + 1].l;
  return ds.squaredNorm() + dl.squaredNorm() + 2.0 * ds.cross(dl).dot(p.burn_points[i]);
}

TransferPlan scale_plan(const TransferPlan& p, double c) {
  if (c == 0.0) throw std::invalid_argument("scale_plan: zero factor");
  TransferPlan out = p;
  for (auto& o : out.orbits) {
    o.l *= c;
    o.s *= c;
  }
  return out;
}

TransferPlan rotate_plan(const TransferPlan& p, const Eigen::Matrix3d& R) {
  if (!(R * R.transpose()).isIdentity(1e-12) || std::abs(R.determinant() - 1.0) > 1e-12)
    throw std::invalid_argument("rotate_plan: not a proper rotation");
  TransferPlan out = p;
  for (auto& o : out.orbits) {
    o.l = R * o.l;
    o.s = R * o.s;
  }
  for (auto& r : out.burn_points) r = R * r;
  return out;
}

}  // namespace orbita
