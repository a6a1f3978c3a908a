#include "orbita/poly/roots.hpp"

#include <algorithm>
#include <cmath>

#include "orbita/errors.hpp"

namespace orbita::poly {

namespace {

// Distinct roots of a square-free polynomial in (lo, hi] by Sturm bisection.
void bisect_isolate(const RatPoly& p, const std::vector<RatPoly>& seq, const Rat& lo, int vlo, const Rat& hi,
                    int vhi, int multiplicity, std::vector<RootInterval>& out) {
  const int count = vlo - vhi;
  if (count <= 0) return;
  if (count == 1) {
    out.push_back({lo, hi, 1, multiplicity});
    return;
  }
  const Rat mid = (lo + hi) / 2;
  const int vmid = sign_variations(seq, mid);
  bisect_isolate(p, seq, lo, vlo, mid, vmid, multiplicity, out);
  bisect_isolate(p, seq, mid, vmid, hi, vhi, multiplicity, out);
}

// Coefficients scaled so the largest has magnitude one, for double evaluation.
std::vector<double> scaled_doubles(const RatPoly& p) {
  Rat big = 0;
  for (const auto& c : p.coeffs()) big = std::max(big, Rat(abs(c)));
  std::vector<double> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(Rat(c / big).get_d());
  return out;
}

std::pair<double, double> eval_with_derivative(const std::vector<double>& c, double x) {
  double v = 0.0, d = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d = d * x + v;
    v = v * x + *it;
  }
  return {v, d};
}

}  // namespace

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p.primitive());
  if (p.degree() == 0) return seq;
  seq.push_back(p.derivative().primitive());
  while (seq.back().degree() > 0) {
    RatPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back((-r).primitive());
  }
  return seq;
}

int sign_variations(const std::vector<RatPoly>& seq, const Rat& x) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int sg = s.sign_at(x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

Rat cauchy_bound(const RatPoly& p) {
  if (p.degree() <= 0) return Rat(1);
  Rat m = 0;
  const Rat lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rat(abs(p.coeff(i)) / lead));
  return m + 1;
}

std::vector<RootInterval> isolate_real_roots(const RatPoly& p, const Rat& lo, const Rat& hi) {
  if (p.is_zero()) throw DegenerateInput("isolate_real_roots: zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() == 0 || !(lo < hi)) return out;
  const auto factors = square_free_factorization(p);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].degree() <= 0) continue;
    const auto seq = sturm_sequence(factors[k]);
    bisect_isolate(factors[k], seq, lo, sign_variations(seq, lo), hi, sign_variations(seq, hi),
                   static_cast<int>(k) + 1, out);
  }
  if (factors.size() <= 1) return out;

  // Roots of different square-free factors are distinct; shrink until disjoint.
  auto by_lo = [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; };
  std::sort(out.begin(), out.end(), by_lo);
  bool overlap = true;
  while (overlap) {
    overlap = false;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (out[i].hi > out[i + 1].lo) {
        overlap = true;
        auto& a = out[i];
        auto& b = out[i + 1];
        a = narrow_interval(factors[static_cast<std::size_t>(a.multiplicity - 1)], a, (a.hi - a.lo) / 2);
        b = narrow_interval(factors[static_cast<std::size_t>(b.multiplicity - 1)], b, (b.hi - b.lo) / 2);
      }
    }
    std::sort(out.begin(), out.end(), by_lo);
  }
  return out;
}

std::vector<RootInterval> isolate_real_roots(const RatPoly& p) {
  const Rat b = cauchy_bound(p);
  return isolate_real_roots(p, Rat(-b), b);
}

RootInterval narrow_interval(const RatPoly& p_in, RootInterval iv, const Rat& width) {
  const RatPoly p = square_free_part(p_in);
  int shi = p.sign_at(iv.hi);
  while (iv.hi - iv.lo > width) {
    if (shi == 0) {
      // The root is hi itself; keep a narrow bracket ending there.
      iv.lo = std::max(iv.lo, Rat(iv.hi - width));
      break;
    }
    const Rat mid = (iv.lo + iv.hi) / 2;
    const int smid = p.sign_at(mid);
    if (smid == 0 || smid == shi) {
      iv.hi = mid;
      shi = smid;
    } else {
      iv.lo = mid;
    }
  }
  return iv;
}

double refine_root(const RatPoly& p_in, const RootInterval& iv_in, double tol) {
  const RatPoly p = square_free_part(p_in);
  if (p.degree() == 1) return Rat(-p.coeff(0) / p.coeff(1)).get_d();
  if (p.sign_at(iv_in.hi) == 0) return iv_in.hi.get_d();

  // Exact bisection down to a width where double Newton is reliable.
  RootInterval iv = narrow_interval(p, iv_in, Rat(std::max(tol, 1e-6)));
  if (p.sign_at(iv.hi) == 0) return iv.hi.get_d();
  const auto c = scaled_doubles(p);
  const Rat half_tol = rat_from_double(tol / 2);
  int shi = p.sign_at(iv.hi);
  double x = Rat((iv.lo + iv.hi) / 2).get_d();
  for (int iter = 0; iter < 200 && iv.hi - iv.lo > rat_from_double(tol); ++iter) {
    const auto [v, d] = eval_with_derivative(c, x);
    double next = d != 0.0 ? x - v / d : x;
    const double lo = iv.lo.get_d(), hi = iv.hi.get_d();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    // Bracket x tightly; if the sign changes across x -+ tol/2 we are done.
    const Rat xr = rat_from_double(x);
    const Rat a = std::max(iv.lo, Rat(xr - half_tol));
    const Rat b = std::min(iv.hi, Rat(xr + half_tol));
    const int sa = p.sign_at(a);
    const int sb = p.sign_at(b);
    if (sb == 0) return b.get_d();
    if (sa == 0) return a.get_d();
    if (sa != sb) {
      iv.lo = a;
      iv.hi = b;
      break;
    }
    if (sb == shi) {
      iv.hi = a;
      shi = sa;
    } else {
      iv.lo = b;
    }
    if (!(iv.lo < iv.hi)) break;
  }
  const double lo = iv.lo.get_d(), hi = iv.hi.get_d();
  if (x >= lo && x <= hi) {
    // Final Newton step polishes the last bits when it stays in the bracket.
    const auto [v, d] = eval_with_derivative(c, x);
    if (d != 0.0) {
      const double next = x - v / d;
      if (next >= lo && next <= hi) return next;
    }
    return x;
  }
  return 0.5 * (lo + hi);
}

RatPoly strip_known_factors(const RatPoly& p, const std::vector<std::pair<RatPoly, int>>& factors) {
  RatPoly q = p;
  for (const auto& [f, mult] : factors)
    for (int i = 0; i < mult; ++i) q = exact_divide(q, f);
  return q;
}

}  // namespace orbita::poly
