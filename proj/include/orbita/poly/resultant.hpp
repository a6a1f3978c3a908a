#pragma once

#include <string_view>
#include <utility>

#include "orbita/poly/mpoly.hpp"

namespace orbita::poly {

/// Determinant of the Sylvester matrix of p and q with respect to `var`,
/// computed by fraction-free Bareiss elimination. The result no longer
/// depends on `var` (it stays in the variable list with exponent zero).
/// Throws DegenerateInput if either polynomial is zero.
MPoly sylvester_resultant(const MPoly& p, const MPoly& q, std::string_view var);

/// Same value as sylvester_resultant when one argument has degree 2 in
/// `var`: reduces the other modulo it and takes the norm of the linear
/// remainder. Used on the long elimination chains.
MPoly quadratic_resultant(const MPoly& p, const MPoly& q, std::string_view var);

/// Dispatches to quadratic_resultant when either argument is quadratic in
/// `var`, otherwise to sylvester_resultant.
MPoly resultant(const MPoly& p, const MPoly& q, std::string_view var);

/// lc(b)^(deg a - deg b + 1) * a reduced modulo b, all degrees in `var`.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::string_view var);

/// Linear remainder u1 * var + u0 reached by the pseudo-remainder Euclidean
/// sequence of p and q. Returns {u1, u0}.
/// Throws ChainCollapse when the sequence jumps past degree one.
std::pair<MPoly, MPoly> euclidean_last_linear(const MPoly& p, const MPoly& q, std::string_view var);

/// Writes p as q1 * var + q0 using var^2 = square, where `square` is free
/// of var. Returns {q1, q0}.
std::pair<MPoly, MPoly> reduce_by_square(const MPoly& p, std::string_view var, const MPoly& square);

}  // namespace orbita::poly
