#include "orbita/poly/resultant.hpp"

#include <string>
#include <vector>

#include "orbita/errors.hpp"

namespace orbita::poly {

namespace {

MPoly var_power(const std::vector<std::string>& vars, std::string_view var, unsigned k) {
  return pow(MPoly::variable(vars, var), k);
}

MPoly bareiss_determinant(std::vector<std::vector<MPoly>> m, const std::vector<std::string>& vars) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly::constant(vars, 1);
  MPoly prev = MPoly::constant(vars, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return MPoly(vars);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MPoly v = m[k][k] * m[i][j];
        if (!m[i][k].is_zero() && !m[k][j].is_zero()) v -= m[i][k] * m[k][j];
        m[i][j] = exact_divide(v, prev);
      }
      m[i][k] = MPoly(vars);
    }
    prev = m[k][k];
  }
  MPoly det = std::move(m[n - 1][n - 1]);
  return negate ? -det : det;
}

}  // namespace

MPoly sylvester_resultant(const MPoly& p_in, const MPoly& q_in, std::string_view var) {
  if (p_in.is_zero() || q_in.is_zero())
    throw DegenerateInput("sylvester_resultant: zero polynomial");
  const auto vars = union_variables(union_variables(p_in.variables(), q_in.variables()), {std::string(var)});
  MPoly p = p_in.with_variables(vars);
  MPoly q = q_in.with_variables(vars);
  const int m = p.degree(var);
  const int n = q.degree(var);
  if (m == 0) return pow(p, static_cast<unsigned>(n));
  if (n == 0) return pow(q, static_cast<unsigned>(m));

  // Work with integer coefficients: Res(cp p, cq q) = cp^n cq^m Res(p, q).
  const Rat cp = p.primitive_scale();
  const Rat cq = q.primitive_scale();
  p *= cp;
  q *= cq;
  const auto pc = p.coefficients_in(var);
  const auto qc = q.coefficients_in(var);

  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<MPoly>> mat(size, std::vector<MPoly>(size, MPoly(vars)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) mat[i][static_cast<std::size_t>(i + m - k)] = pc[static_cast<std::size_t>(k)];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k)
      mat[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + n - k)] = qc[static_cast<std::size_t>(k)];

  MPoly det = bareiss_determinant(std::move(mat), vars);
  Rat scale = 1;
  for (int i = 0; i < n; ++i) scale *= cp;
  for (int i = 0; i < m; ++i) scale *= cq;
  det *= Rat(1 / scale);
  return det;
}

MPoly pseudo_remainder(const MPoly& a_in, const MPoly& b_in, std::string_view var) {
  if (b_in.is_zero()) throw DegenerateInput("pseudo_remainder: zero divisor");
  const auto vars = union_variables(union_variables(a_in.variables(), b_in.variables()), {std::string(var)});
  MPoly r = a_in.with_variables(vars);
  const MPoly b = b_in.with_variables(vars);
  const int da = r.degree(var);
  const int db = b.degree(var);
  if (da < db) return r;
  const MPoly lb = b.coefficient(var, static_cast<unsigned>(db));
  int steps = 0;
  int dr = da;
  while (!r.is_zero() && dr >= db) {
    const MPoly lr = r.coefficient(var, static_cast<unsigned>(dr));
    r = lb * r - lr * b * var_power(vars, var, static_cast<unsigned>(dr - db));
    ++steps;
    dr = r.degree(var);
  }
  const int missing = da - db + 1 - steps;
  if (missing > 0) r *= pow(lb, static_cast<unsigned>(missing));
  return r;
}

MPoly quadratic_resultant(const MPoly& p_in, const MPoly& q_in, std::string_view var) {
  if (p_in.is_zero() || q_in.is_zero())
    throw DegenerateInput("quadratic_resultant: zero polynomial");
  const auto vars = union_variables(union_variables(p_in.variables(), q_in.variables()), {std::string(var)});
  MPoly f = p_in.with_variables(vars);
  MPoly g = q_in.with_variables(vars);
  // deg f * deg g is even, so Res(f, g) = Res(g, f) and the roles may swap.
  if (f.degree(var) != 2) std::swap(f, g);
  if (f.degree(var) != 2) throw std::invalid_argument("quadratic_resultant: no argument of degree 2");
  const int n = g.degree(var);
  if (n == 0) return pow(g, 2);

  const auto fc = f.coefficients_in(var);
  const MPoly& c = fc[0];
  const MPoly& b = fc[1];
  const MPoly& a = fc[2];
  // a^(n-1) g = Q f + U var + V
  const MPoly rem = n >= 2 ? pseudo_remainder(g, f, var) : g;
  const MPoly u = rem.coefficient(var, 1);
  const MPoly v = rem.coefficient(var, 0);
  MPoly norm = u * u * c + v * v * a;
  if (!b.is_zero()) norm -= u * v * b;
  if (n == 1) return norm;
  return exact_divide(norm, pow(a, static_cast<unsigned>(n - 1)));
}

MPoly resultant(const MPoly& p, const MPoly& q, std::string_view var) {
  const bool pq = p.has_variable(var) && p.degree(var) == 2;
  const bool qq = q.has_variable(var) && q.degree(var) == 2;
  if (pq || qq) return quadratic_resultant(p, q, var);
  return sylvester_resultant(p, q, var);
}

std::pair<MPoly, MPoly> euclidean_last_linear(const MPoly& p_in, const MPoly& q_in, std::string_view var) {
  if (p_in.is_zero() || q_in.is_zero())
    throw DegenerateInput("euclidean_last_linear: zero polynomial");
  const auto vars = union_variables(union_variables(p_in.variables(), q_in.variables()), {std::string(var)});
  MPoly a = p_in.with_variables(vars);
  MPoly b = q_in.with_variables(vars);
  if (a.degree(var) < b.degree(var)) std::swap(a, b);
  while (true) {
    const int db = b.degree(var);
    if (db == 1) return {b.coefficient(var, 1), b.coefficient(var, 0)};
    if (db <= 0) throw ChainCollapse("euclidean_last_linear: remainder sequence skipped degree one");
    MPoly r = (-pseudo_remainder(a, b, var)).primitive();
    if (r.is_zero())
      throw ChainCollapse("euclidean_last_linear: common factor of degree " + std::to_string(db));
    a = std::move(b);
    b = std::move(r);
  }
}

std::pair<MPoly, MPoly> reduce_by_square(const MPoly& p_in, std::string_view var, const MPoly& square) {
  const auto vars = union_variables(union_variables(p_in.variables(), square.variables()), {std::string(var)});
  const MPoly p = p_in.with_variables(vars);
  const MPoly sq = square.with_variables(vars);
  if (sq.degree(var) > 0) throw std::invalid_argument("reduce_by_square: square depends on the variable");
  const auto coeffs = p.coefficients_in(var);
  MPoly q0(vars), q1(vars);
  MPoly power = MPoly::constant(vars, 1);
  for (std::size_t k = 0; k < coeffs.size(); k += 2) {
    q0 += coeffs[k] * power;
    if (k + 1 < coeffs.size()) q1 += coeffs[k + 1] * power;
    power *= sq;
  }
  return {q1, q0};
}

}  // namespace orbita::poly
