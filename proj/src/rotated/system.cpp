#include "orbita/rotated_system.hpp"

#include <string>
#include <vector>

#include "orbita/errors.hpp"
#include "orbita/poly/resultant.hpp"
#include "orbita/poly/roots.hpp"

namespace orbita {

using poly::MPoly;
using poly::Rat;
using poly::RatPoly;

namespace {

const std::vector<std::string> kVars2a{"x0", "y0", "l"};
const std::vector<std::string> kVars2b{"x0", "s", "l"};

RatPoly strip_l_factors(const RatPoly& p) {
  if (p.is_zero()) throw DegenerateInput("case 2b: eliminant vanishes identically");
  RatPoly core = p.primitive();
  const RatPoly lin{Rat(0), Rat(1)};
  const RatPoly lm1{Rat(-1), Rat(1)};
  const RatPoly lp1{Rat(1), Rat(1)};
  for (const auto& f : {lin, lm1, lp1}) {
    while (core.degree() > 0) {
      auto [q, r] = poly::divmod(core, f);
      if (!r.is_zero()) break;
      core = q;
    }
  }
  return poly::square_free_part(core);
}

}  // namespace

RatPoly case2a_complex_factor(const Rat& s0x, const Rat& s0y) {
  return RatPoly{Rat(1 - s0y * s0y), Rat(-2 * s0x), Rat(s0x * s0x + s0y * s0y)};
}

Case2aSystem build_case2a_system(const Rat& s0x, const Rat& s0y) {
  const auto& v = kVars2a;
  const MPoly x0 = MPoly::variable(v, "x0");
  const MPoly y0 = MPoly::variable(v, "y0");
  const MPoly l = MPoly::variable(v, "l");
  const MPoly one_l = Rat(1) - l;

  // s0y - s1y = u / (l x0) after eliminating s1y with eq3.
  const MPoly u = s0y * l * x0 - Rat(1) - s0y * x0 + s0x * y0 + l * l;
  const MPoly lx0_sq = l * l * x0 * x0;
  const MPoly n = (s0x * s0x + one_l * one_l - Rat(2 * s0x) * one_l * y0) * lx0_sq + u * u +
                  Rat(2) * one_l * u * l * x0 * x0;

  Case2aSystem sys;
  sys.eq1 = x0 * x0 + y0 * y0 - Rat(1);
  sys.cost_numerator = n;
  sys.eq7 = l * n.partial("l") - Rat(2) * n;
  sys.eq8 = x0 * x0 * n.partial("y0") - y0 * x0 * n.partial("x0") + Rat(2) * y0 * n;
  return sys;
}

Case2aElimination eliminate_case2a(const Case2aSystem& sys, const Rat& s0x, const Rat& s0y) {
  Case2aElimination el;
  el.p78 = poly::sylvester_resultant(sys.eq7, sys.eq8, "l");
  const MPoly p178 = poly::resultant(sys.eq1, el.p78, "x0");
  el.p178 = p178.to_univariate("y0");
  if (el.p178.degree() != 48)
    throw PipelineDegreeMismatch("case 2a: Res_x0(eq1, p78) has degree " + std::to_string(el.p178.degree()) +
                                 ", expected 48");
  const RatPoly y{Rat(0), Rat(1)};
  const RatPoly ym1{Rat(-1), Rat(1)};
  const RatPoly yp1{Rat(1), Rat(1)};
  el.pol20 = poly::strip_known_factors(
                 el.p178, {{y, 8}, {ym1, 6}, {yp1, 6}, {case2a_complex_factor(s0x, s0y), 4}})
                 .primitive();
  if (el.pol20.degree() != 20)
    throw PipelineDegreeMismatch("case 2a: remaining factor has degree " + std::to_string(el.pol20.degree()) +
                                 ", expected 20");
  const MPoly y0 = MPoly::variable(el.p78.variables(), "y0");
  auto [q1, q0] = poly::reduce_by_square(el.p78, "x0", Rat(1) - y0 * y0);
  el.q1 = std::move(q1);
  el.q0 = std::move(q0);
  return el;
}

Case2bSystem build_case2b_system(const Rat& s0x, const Rat& s0y) {
  const auto& v = kVars2b;
  const MPoly x0 = MPoly::variable(v, "x0");
  const MPoly s = MPoly::variable(v, "s");
  const MPoly l = MPoly::variable(v, "l");
  const MPoly one = MPoly::constant(v, 1);
  const MPoly one_l = one - l;
  const MPoly one_l2 = one - l * l;

  // s1x = X / D and y0 = (1 - l^2) / s0x after using eq3 +- eq4.
  const MPoly d = l * one_l2;
  const MPoly big_x = s0x * x0 * (l * s - s0y);
  const MPoly d2 = d * d;
  const MPoly dsy = s0y - s;
  const Rat inv_s0x = 1 / s0x;

  const MPoly a0 = s0x * d - big_x;
  const MPoly a1 = s0x * d + big_x;
  Case2bSystem sys;
  sys.n0 = a0 * a0 + d2 * (dsy * dsy + one_l * one_l + Rat(2) * one_l * x0 * dsy) -
           Rat(2 * inv_s0x) * one_l * one_l2 * d * a0;
  sys.n1 = a1 * a1 + d2 * (dsy * dsy + one_l * one_l - Rat(2) * one_l * x0 * dsy) -
           Rat(2 * inv_s0x) * one_l * one_l2 * d * a1;

  sys.eq9 = s0x * s0x * (x0 * x0 - one) + one_l2 * one_l2;

  const MPoly n0s = sys.n0.partial("s");
  const MPoly n1s = sys.n1.partial("s");
  const MPoly lp1 = l + one;
  MPoly e10 = (n0s * n0s * sys.n1 - n1s * n1s * sys.n0) * lp1 * lp1;
  sys.eq10 = poly::exact_divide(e10, l * l * l * poly::pow(one_l2, 4));

  const MPoly dl = d.partial("l");
  auto g = [&](const MPoly& n) {
    return Rat(2) * d2 * n.partial("x0") + Rat(s0x * s0x) * x0 * (n.partial("l") * d - Rat(2) * n * dl);
  };
  sys.g0 = g(sys.n0);
  sys.g1 = g(sys.n1);
  const MPoly& g0 = sys.g0;
  const MPoly& g1 = sys.g1;
  MPoly e11 = -(g0 * g0 * sys.n1 - g1 * g1 * sys.n0) * lp1;
  sys.eq11 = poly::exact_divide(e11, l * l * poly::pow(one_l2, 3));
  return sys;
}

Case2bElimination eliminate_case2b(const Case2bSystem& sys) {
  Case2bElimination el;
  el.eq10 = sys.eq10;
  el.eq11 = sys.eq11;
  const MPoly s = MPoly::variable(sys.eq10.variables(), "s");
  while (el.eq10.substitute("s", Rat(0)).is_zero() && el.eq11.substitute("s", Rat(0)).is_zero()) {
    el.eq10 = poly::exact_divide(el.eq10, s);
    el.eq11 = poly::exact_divide(el.eq11, s);
    el.symmetric_branch = true;
  }
  // Reducing modulo eq9 first keeps x0 linear; Res_x0(eq9, .) only changes
  // by a constant power of lc(eq9).
  const MPoly x0 = MPoly::variable(sys.eq10.variables(), "x0");
  const MPoly x0_sq = poly::exact_divide(-sys.eq9.substitute("x0", Rat(0)), sys.eq9.coefficient("x0", 2));
  auto reduce = [&](const MPoly& p) {
    auto [q1, q0] = poly::reduce_by_square(p, "x0", x0_sq);
    return q1 * x0 + q0;
  };
  el.p1011 = reduce(poly::resultant(reduce(el.eq10), reduce(el.eq11), "s"));
  const MPoly p = poly::resultant(sys.eq9, el.p1011, "x0");
  el.p91011 = p.to_univariate("l");
  if (!el.symmetric_branch && el.p91011.degree() != 166)
    throw PipelineDegreeMismatch("case 2b: Res_x0(eq9, p1011) has degree " +
                                 std::to_string(el.p91011.degree()) + ", expected 166");
  el.core = strip_l_factors(el.p91011);
  if (el.symmetric_branch) {
    el.g0_on_axis = sys.g0.substitute("s", Rat(0));
    el.axis_core = strip_l_factors(poly::resultant(sys.eq9, el.g0_on_axis, "x0").to_univariate("l"));
  }
  return el;
}

}  // namespace orbita
