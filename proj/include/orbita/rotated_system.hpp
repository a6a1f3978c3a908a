#pragma once

#include "orbita/poly/mpoly.hpp"
#include "orbita/poly/rat_poly.hpp"

namespace orbita {

/// Critical-point equations of the symmetric rotated-ellipse transfers, built
/// exactly for one rational (s0x, s0y).
///
/// Case 2a (x1 = x0, y1 = -y0, s1x = 0) lives in variables {x0, y0, l}; case
/// 2b (x1 = -x0, y1 = -y0) in {x0, s, l} with s = s1y and l = l1z.
struct Case2aSystem {
  poly::MPoly eq1;  // x0^2 + y0^2 - 1
  poly::MPoly eq7;  // l^3 x0^2 dc/dl
  poly::MPoly eq8;  // l^2 x0^3 (x0 dc/dy0 - y0 dc/dx0)
  poly::MPoly cost_numerator;  // c = N / (l^2 x0^2)
};

struct Case2aElimination {
  poly::MPoly p78;   // Res_l(eq7, eq8)
  poly::RatPoly p178;  // Res_x0(eq1, p78), in y0
  poly::RatPoly pol20;  // p178 with its known factors removed
  poly::MPoly q1, q0;  // p78 reduced by x0^2 = 1 - y0^2: q1 x0 + q0
};

struct Case2bSystem {
  poly::MPoly eq9;
  poly::MPoly eq10;
  poly::MPoly eq11;
  poly::MPoly n0, n1;  // Delta_i^2 = n_i / (l (1 - l^2))^2
  poly::MPoly g0, g1;  // numerators of the lambda-free gradient combination
};

struct Case2bElimination {
  /// eq10 and eq11 with any common power of s divided out; equal to the
  /// system's polynomials unless s0y = 0.
  poly::MPoly eq10, eq11;
  poly::MPoly p1011;  // Res_s(eq10, eq11) with x0^2 eliminated by eq9
  poly::RatPoly p91011;  // Res_x0(eq9, p1011), in l
  poly::RatPoly core;  // square-free part after removing l, l - 1, l + 1
  /// s0y = 0 only: eq10 and eq11 share the factor s, and on s = 0 the
  /// remaining condition is g0 = 0. Res_x0(eq9, g0(s = 0)) reduced like core.
  bool symmetric_branch = false;
  poly::MPoly g0_on_axis;  // g0 at s = 0, variables {x0, s, l}
  poly::RatPoly axis_core;
};

Case2aSystem build_case2a_system(const poly::Rat& s0x, const poly::Rat& s0y);
/// Throws PipelineDegreeMismatch unless deg p178 = 48 and deg pol20 = 20.
Case2aElimination eliminate_case2a(const Case2aSystem& sys, const poly::Rat& s0x, const poly::Rat& s0y);

Case2bSystem build_case2b_system(const poly::Rat& s0x, const poly::Rat& s0y);
/// Throws PipelineDegreeMismatch unless deg p91011 = 166. For s0y = 0 the
/// common factor s is removed first and no degree is asserted.
Case2bElimination eliminate_case2b(const Case2bSystem& sys);

/// y0^2 (s0x^2 + s0y^2) - 2 y0 s0x + 1 - s0y^2, the quartic-multiplicity factor of p178.
poly::RatPoly case2a_complex_factor(const poly::Rat& s0x, const poly::Rat& s0y);

}  // namespace orbita
