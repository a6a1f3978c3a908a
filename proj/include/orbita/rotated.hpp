#pragma once

#include <string>
#include <vector>

#include "orbita/poly/rat.hpp"
#include "orbita/transfer.hpp"

namespace orbita {

/// Two identical coplanar ellipses with l0 = l2 = (0, 0, 1),
/// s0 = (s0x, s0y, 0) and s2 = (-s0x, s0y, 0). The second is the first
/// rotated by alpha = 2 atan(s0x / s0y).
struct RotatedInput {
  poly::Rat s0x;
  poly::Rat s0y;
  poly::Rat e;  // exact when built by params_from_angle
  double alpha_deg = 0.0;  // realized angle
  long a = 0, b = 0;  // parametrization integers, 0 when not used
  bool circular = false;
};

/// Smallest integers a > b >= 0 (by max(a, b)) whose angle
/// 2 atan((a^2 - b^2) / (2ab)) is within 0.01 degrees of alpha_deg, and
/// s0x = e (a^2 - b^2) / (a^2 + b^2), s0y = e 2ab / (a^2 + b^2) with e
/// rationalized at 1e-12. alpha_deg = 180 gives b = 0.
/// Requires 0 <= e < 1 and 0 < alpha_deg <= 180.
RotatedInput params_from_angle(double e, double alpha_deg);

/// Input from exact (s0x, s0y); e is the rationalized norm.
RotatedInput rotated_input(const poly::Rat& s0x, const poly::Rat& s0y);

/// Orbits 0 and 2 of the problem.
std::pair<Orbit, Orbit> rotated_orbits(const RotatedInput& in);

enum class RotatedCase { case2a_axis, case2a_general, case2b_closed, case2b_general, case1 };
std::string to_string(RotatedCase c);

struct RotatedCandidate {
  TransferPlan plan;
  double f1 = 0.0;
  RotatedCase case_tag = RotatedCase::case2a_general;
  double separation_angle_deg = 0.0;
  /// Known to be beaten by another closed form.
  bool dominated = false;
  /// Largest |eq_i| of the six transfer equations.
  double max_residual = 0.0;
  std::string note;
};

/// Diagnostics for candidates that were computed but not returned.
using RotatedLog = std::vector<std::string>;

/// x0 = x1 = 0, y0 = -y1 = +-1, s1 = (0, s0y), l1z = sqrt(1 -+ s0x),
/// f1 = 2 |1 -+ s0x -+ sqrt(1 -+ s0x)|. Non-elliptic candidates are logged
/// and dropped.
std::vector<RotatedCandidate> case2a_axis_solutions(const RotatedInput& in, RotatedLog* log = nullptr);

/// Symmetric transfers (x1 = x0, y1 = -y0, s1x = 0) from the real roots
/// of the degree-20 factor. Requires s0x != 0.
std::vector<RotatedCandidate> case2a_general(const RotatedInput& in, RotatedLog* log = nullptr);

/// Collinear transfers (x1 = -x0, y1 = -y0): the l1z = 1 representative
/// (s1x = 0), the dominated l1z = -1 solution, then the roots of the
/// degree-166 eliminant. Requires s0x != 0.
std::vector<RotatedCandidate> case2b_solutions(const RotatedInput& in, RotatedLog* log = nullptr);

struct Case1Config {
  int seeds = 64;
  int max_iterations = 200;
};

/// Non-symmetric critical points (y0 + y1 != 0) of the full Lagrange system,
/// found by damped Newton from a deterministic seed lattice. Best-found only.
std::vector<RotatedCandidate> case1_numeric(const RotatedInput& in, const Case1Config& cfg = {},
                                            RotatedLog* log = nullptr);

struct RotatedCases {
  bool case1 = true;
  bool case2a = true;
  bool case2b = true;
};

struct RotatedResult {
  RotatedCandidate winner;
  /// Sorted by f1; ties keep the case order of RotatedCase.
  std::vector<RotatedCandidate> all;
  RotatedLog log;
};

RotatedResult best_rotated_transfer(const RotatedInput& in, const RotatedCases& cases = {},
                                    const Case1Config& case1 = {});

/// Minimum f1 over coplanar transfers burning exactly at the two apogees.
/// Throws DegenerateGeometry when the apogees coincide (s0x = 0) or e = 0.
double apogee_to_apogee_cost(const RotatedInput& in);

/// Angle in degrees between the apogee of orbit 0 and the first burn
/// point, in [0, 180]; NaN for a circular input.
double separation_angle(const RotatedCandidate& c, const RotatedInput& in);

/// eq1..eq6 residuals of a two-impulse plan in this problem's frame.
double rotated_max_residual(const TransferPlan& plan, const RotatedInput& in);

}  // namespace orbita
