#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbita/poly/rat.hpp"
#include "orbita/poly/rat_poly.hpp"

namespace orbita::poly {

/// Sparse multivariate polynomial over Q with named variables.
///
/// Terms are kept sorted in descending lexicographic order of their exponent
/// vectors (first variable most significant) and never carry a zero
/// coefficient. Exponent vectors are packed into one 64-bit key, so each
/// variable gets 64 / nvars bits (capped at 32); arithmetic that would
/// overflow a field throws std::overflow_error.
class MPoly {
 public:
  using Exponents = std::vector<unsigned>;
  struct Term {
    Exponents exponents;
    Rat coeff;
  };

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars);

  static MPoly constant(std::vector<std::string> vars, const Rat& c);
  static MPoly variable(std::vector<std::string> vars, std::string_view name);
  static MPoly from_univariate(const RatPoly& p, std::vector<std::string> vars, std::string_view var);

  const std::vector<std::string>& variables() const { return vars_; }
  /// Index of `name` in the variable list; throws std::invalid_argument if absent.
  std::size_t index_of(std::string_view name) const;
  bool has_variable(std::string_view name) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t num_terms() const { return terms_.size(); }
  std::vector<Term> terms() const;
  /// Adds c * x^e to the polynomial.
  void add_term(const Exponents& e, const Rat& c);

  /// -1 for the zero polynomial.
  int degree(std::string_view var) const;
  int total_degree() const;

  /// Coefficient of var^k as a polynomial over the same variable list.
  MPoly coefficient(std::string_view var, unsigned k) const;
  /// All coefficients in `var`, index k holding the coefficient of var^k.
  std::vector<MPoly> coefficients_in(std::string_view var) const;

  MPoly partial(std::string_view var) const;
  MPoly substitute(std::string_view var, const Rat& value) const;
  MPoly substitute(std::string_view var, const MPoly& value) const;

  /// Values are given in the order of variables().
  Rat evaluate(std::span<const Rat> values) const;
  double evaluate(std::span<const double> values) const;

  /// Requires every variable except `var` to be absent.
  RatPoly to_univariate(std::string_view var) const;

  /// Re-embeds into a variable list that contains all current variables.
  MPoly with_variables(const std::vector<std::string>& vars) const;

  /// Positive rational multiple with coprime integer coefficients.
  MPoly primitive() const;
  /// The positive factor c with primitive() == c * (*this).
  Rat primitive_scale() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rat& c);

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
  friend MPoly operator*(const Rat& c, MPoly a) { return a *= c; }
  friend MPoly operator+(const MPoly& a, const Rat& c);
  friend MPoly operator+(const Rat& c, const MPoly& a) { return a + c; }
  friend MPoly operator-(const MPoly& a, const Rat& c) { return a + Rat(-c); }
  friend MPoly operator-(const Rat& c, const MPoly& a) { return -a + c; }
  friend MPoly operator-(MPoly a);
  friend bool operator==(const MPoly& a, const MPoly& b);

  /// Plain-text dump: one `coeff * x0^a y0^b` term per line, ascending exponent order.
  std::string to_string() const;

  friend MPoly exact_divide(const MPoly& a, const MPoly& b);

 private:
  struct Packed {
    std::uint64_t key;
    Rat coeff;
  };

  void set_vars(std::vector<std::string> vars);
  std::uint64_t pack(const Exponents& e) const;
  Exponents unpack(std::uint64_t key) const;
  unsigned field(std::uint64_t key, std::size_t var) const;
  std::uint64_t field_mask() const;
  std::vector<unsigned> max_exponents() const;
  void sort_and_merge();
  static void align(MPoly& a, MPoly& b);

  std::vector<std::string> vars_;
  unsigned bits_ = 0;
  std::vector<Packed> terms_;
};

MPoly pow(const MPoly& p, unsigned e);

/// a / b for an exact divisor b; throws NotAFactor when the division leaves a remainder.
MPoly exact_divide(const MPoly& a, const MPoly& b);

/// Ordered union of two variable lists (first list order, then new names of the second).
std::vector<std::string> union_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

}  // namespace orbita::poly
