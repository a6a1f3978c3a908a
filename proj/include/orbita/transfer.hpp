#pragma once

#include <string>
#include <vector>

#include "orbita/kepler.hpp"

namespace orbita {

/// n-impulse transfer: orbits[0] -> ... -> orbits[n], impulse i applied at
/// burn_points[i] between orbits[i] and orbits[i + 1].
struct TransferPlan {
  std::vector<Orbit> orbits;
  std::vector<Vec3> burn_points;

  std::size_t impulse_count() const { return burn_points.size(); }
};

struct CostReport {
  std::vector<double> deltas;
  double f1 = 0.0;
  double f2 = 0.0;
};

struct Residual {
  std::string name;
  double value = 0.0;
  /// Margins must be positive; the other residuals must stay below tolerance.
  bool is_margin = false;
};

struct PlanValidation {
  std::vector<Residual> residuals;
  bool valid = false;
  /// Name of the first violated constraint, empty when valid.
  std::string first_violation;
  double max_equality_residual = 0.0;
};

inline constexpr double kPlanTolerance = 1e-9;

/// Throws InvalidPlan if the plan is structurally malformed (n < 1 or
/// orbits.size() != n + 1); every other defect is reported as a residual.
PlanValidation validate_plan(const TransferPlan& p, double tol = kPlanTolerance);

/// Impulse magnitudes |w_i - w_i*|; throws InvalidPlan if validation fails.
CostReport impulses(const TransferPlan& p, double tol = kPlanTolerance);

/// Impulse magnitudes without validation (used inside search loops).
CostReport impulses_unchecked(const TransferPlan& p);

/// |s_i - s_i+1|^2 + |l_i - l_i+1|^2 + 2 ((s_i - s_i+1) x (l_i - l_i+1)).rhat_i
double delta_squared_identity(const TransferPlan& p, std::size_t i);

TransferPlan scale_plan(const TransferPlan& p, double c);

/// Throws std::invalid_argument unless R is a proper rotation (1e-12).
TransferPlan rotate_plan(const TransferPlan& p, const Eigen::Matrix3d& R);

}  // namespace orbita
