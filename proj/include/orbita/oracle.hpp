#pragma once

#include <functional>
#include <span>
#include <vector>

#include "orbita/kepler.hpp"
#include "orbita/lambert.hpp"
#include "orbita/poly/mpoly.hpp"
#include "orbita/transfer.hpp"

namespace orbita {

enum class CostKind { f1, f2 };

struct OracleConfig {
  int grid_points_per_dim = 64;
  /// Maximum coordinate-descent sweeps per refined seed.
  int refine_iterations = 200;
  /// Coordinate descent stops once every step is below this.
  double refine_tolerance = 1e-13;
  /// Shifts the angular grids by seed * (golden ratio) of a cell.
  unsigned seed = 0;
  /// Transfer-orbit |l| bound; 0 selects 3 * max |l_i| of the given orbits.
  double l_bound = 0.0;
  /// Number of best grid cells refined.
  int top_k = 6;
  int threads = 1;
};

struct OracleResult {
  TransferPlan plan;
  double cost = 0.0;
  double grid_cost = 0.0;
};

/// Brute-force minimum of f1 or f2 over coplanar two-impulse transfers
/// between two planar orbits (l along +-z). Searches (theta0, theta1, l1z)
/// with s1 from the two radius conditions, plus the antipodal slice
/// theta1 = theta0 + pi where that linear system is singular.
OracleResult planar_two_impulse_min(const Orbit& o0, const Orbit& o2, CostKind cost, const OracleConfig& cfg);

struct FixedEndpointResult {
  Orbit orbit1;  // world frame
  Vec3 w0star = Vec3::Zero();
  Vec3 w1 = Vec3::Zero();
  double cost = 0.0;
  double grid_cost = 0.0;
};

/// Brute-force minimum over transfer orbits through the fixed points r0, r1.
/// l_lo / l_hi bound the framed l1z (both zero selects symmetric defaults).
/// Throws NoFeasible if no sampled orbit is elliptic.
FixedEndpointResult fixed_endpoint_min(const LambertInput& in, CostKind cost, const OracleConfig& cfg,
                                       double l_lo = 0.0, double l_hi = 0.0);

struct StationarityReport {
  std::vector<double> lambdas;
  double gradient_residual = 0.0;
  /// Smallest singular value of the constraint Jacobian (0 with no constraints).
  double min_singular_value = 0.0;
};

/// Least-squares multipliers for grad(cost) = sum lambda_i grad(constraint_i)
/// at `point` (ordered like cost.variables()).
StationarityReport stationarity_check(const std::vector<poly::MPoly>& constraints, const poly::MPoly& cost,
                                      std::span<const double> point);

/// Deterministic coordinate descent: golden-section line searches along
/// each axis within +-step, shrinking steps, plus a pattern move per sweep.
/// Only improvements are accepted, so the result never exceeds f(x).
double coordinate_descent(const std::function<double(std::span<const double>)>& f, std::vector<double>& x,
                          std::vector<double> step, int max_sweeps, double min_step = 1e-13);

}  // namespace orbita
