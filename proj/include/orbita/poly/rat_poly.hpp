#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbita/poly/rat.hpp"

namespace orbita::poly {

/// Dense univariate polynomial over Q, coefficients stored lowest degree first.
///
/// The zero polynomial has no coefficients; otherwise the leading coefficient
/// is nonzero.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs);
  RatPoly(std::initializer_list<Rat> coeffs);

  static RatPoly constant(const Rat& c);
  /// c * x^degree
  static RatPoly monomial(const Rat& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  /// Coefficient of x^i, zero beyond the degree.
  Rat coeff(int i) const;
  const Rat& leading() const { return coeffs_.back(); }

  Rat evaluate(const Rat& x) const;
  /// Sign of p(x) without materializing the value where avoidable.
  int sign_at(const Rat& x) const;
  double evaluate(double x) const;

  RatPoly derivative() const;
  /// Positive rational multiple with coprime integer coefficients.
  RatPoly primitive() const;
  RatPoly monic() const;

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const RatPoly& o);
  RatPoly& operator*=(const Rat& c);

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(RatPoly a, const Rat& c) { return a *= c; }
  friend RatPoly operator-(RatPoly a);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

/// Quotient and remainder of Euclidean division; throws DegenerateInput on b == 0.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

/// a / b, throwing NotAFactor if the division leaves a remainder.
RatPoly exact_divide(const RatPoly& a, const RatPoly& b);

/// Monic greatest common divisor (zero if both are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);

RatPoly pow(const RatPoly& p, unsigned e);

/// p / gcd(p, p'), made primitive.
RatPoly square_free_part(const RatPoly& p);

/// Yun's square-free factorization: result[i] is the product of the
/// irreducible factors of multiplicity i + 1 (some may be constant 1).
std::vector<RatPoly> square_free_factorization(const RatPoly& p);

}  // namespace orbita::poly
