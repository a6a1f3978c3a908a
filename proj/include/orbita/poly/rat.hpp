#pragma once

#include <gmpxx.h>

#include <string>

namespace orbita::poly {

/// Exact rational number. Arithmetic results are canonical; the two-argument
/// constructor is not, so call canonicalize() on non-reduced num/den pairs.
using Rat = mpq_class;

/// Exact value of a finite double (every double is a dyadic rational).
Rat rat_from_double(double x);

/// Simplest rational within `tol` of `x` (continued-fraction convergents).
Rat rationalize(double x, double tol);

inline double to_double(const Rat& r) { return r.get_d(); }

std::string to_string(const Rat& r);

/// Sign of r: -1, 0 or +1.
inline int sign(const Rat& r) { return sgn(r); }

}  // namespace orbita::poly
