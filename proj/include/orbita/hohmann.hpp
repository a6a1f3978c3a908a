#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbita/transfer.hpp"

namespace orbita {

/// Two coplanar circular orbits through the x axis; the sign of each l_z is
/// the sense of rotation. Both must be non-zero.
struct HohmannInput {
  double l0z = 1.0;
  double l2z = 1.0;
};

enum class HohmannBranch { coplanar, out_of_plane, same_orbit, reversal };
std::string to_string(HohmannBranch b);

struct HohmannBranchSolution {
  TransferPlan plan;
  double f1 = 0.0;
  HohmannBranch branch = HohmannBranch::coplanar;
  bool feasible = false;
  /// Best entry of the list it was returned in.
  bool optimal = false;
  /// Set on both coplanar entries when l0z + l2z = 0.
  bool tie = false;
};

/// Burns at (1,0,0) and (-1,0,0), l1z = +-sqrt((l0z^2 + l2z^2) / 2).
/// The entry with l1z of the sign of l0z + l2z is flagged optimal; throws
/// std::logic_error if the costs disagree with that.
std::vector<HohmannBranchSolution> solve_coplanar(const HohmannInput& in);

/// Real roots a1 < a2 of a^4 + 2a^3 + 2a + 1, isolated and refined once.
std::pair<double, double> out_of_plane_window();

/// The two tilted transfers (l1y = +-...), or empty outside a1 < l2z/l0z < a2.
std::vector<HohmannBranchSolution> solve_out_of_plane(const HohmannInput& in);

/// |l0z| = |l2z| (1e-12 relative): f1 = 0 for the same orbit, otherwise a
/// reversal at (1,0,0) through the orbit with velocity w0 / 2, f1 = 2 |l0z|.
/// Throws std::invalid_argument for different radii.
HohmannBranchSolution solve_same_radius_cases(const HohmannInput& in);

/// Minimum-f1 transfer between circular orbits of radii r0, r2 rotating in
/// senses dir0, dir2 (+1 or -1) about z.
HohmannBranchSolution best_transfer(double r0, double r2, int dir0, int dir2);

/// Every candidate best_transfer compares, in a fixed order.
std::vector<HohmannBranchSolution> all_transfers(double r0, double r2, int dir0, int dir2);

}  // namespace orbita
