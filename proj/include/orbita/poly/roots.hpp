#pragma once

#include <utility>
#include <vector>

#include "orbita/poly/rat.hpp"
#include "orbita/poly/rat_poly.hpp"

namespace orbita::poly {

/// Half-open interval (lo, hi] holding exactly one distinct real root.
struct RootInterval {
  Rat lo;
  Rat hi;
  int sign_change_count = 1;
  /// Multiplicity of the root in the original polynomial.
  int multiplicity = 1;
};

/// Sturm sequence p, p', -rem(p, p'), ... with each member made primitive
/// (positive scaling, so signs are unchanged).
std::vector<RatPoly> sturm_sequence(const RatPoly& p);

/// Number of sign variations of the sequence at x, zeros skipped.
int sign_variations(const std::vector<RatPoly>& seq, const Rat& x);

/// 1 + max |a_i / a_n|; every real root lies in (-bound, bound).
Rat cauchy_bound(const RatPoly& p);

/// Disjoint isolating intervals for the distinct real roots of p in (lo, hi],
/// sorted by position. Throws DegenerateInput for the zero polynomial.
std::vector<RootInterval> isolate_real_roots(const RatPoly& p, const Rat& lo, const Rat& hi);
/// All real roots, using the Cauchy bound.
std::vector<RootInterval> isolate_real_roots(const RatPoly& p);

/// Approximates the root isolated by iv until the bracket is narrower than
/// tol: exact bisection, then Newton steps kept inside the bracket.
double refine_root(const RatPoly& p, const RootInterval& iv, double tol = 1e-13);

/// Shrinks iv by exact bisection until hi - lo <= width.
RootInterval narrow_interval(const RatPoly& p, RootInterval iv, const Rat& width);

/// Divides p by each factor^multiplicity exactly; throws NotAFactor otherwise.
RatPoly strip_known_factors(const RatPoly& p, const std::vector<std::pair<RatPoly, int>>& factors);

}  // namespace orbita::poly
