#include "orbita/poly/rat.hpp"

#include <cmath>
#include <stdexcept>

namespace orbita::poly {

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
  return Rat(x);
}

Rat rationalize(double x, double tol) {
  const Rat target = rat_from_double(x);
  const Rat eps = rat_from_double(tol);
  // Convergents h/k of the continued fraction of the exact value of x.
  mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  Rat rest = target;
  for (int iter = 0; iter < 200; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    const mpz_class h = a * h_prev + h_prev2;
    const mpz_class k = a * k_prev + k_prev2;
    Rat approx(h, k);
    approx.canonicalize();
    if (abs(approx - target) <= eps) return approx;
    const Rat frac = rest - Rat(a);
    if (frac == 0) return approx;
    rest = 1 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return target;
}

std::string to_string(const Rat& r) { return r.get_str(); }

}  // namespace orbita::poly
