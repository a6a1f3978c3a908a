#include "orbita/poly/rat_poly.hpp"

#include <algorithm>
#include <sstream>

#include "orbita/errors.hpp"

namespace orbita::poly {

namespace {

bool all_integral(const std::vector<Rat>& c) {
  return std::all_of(c.begin(), c.end(), [](const Rat& r) { return r.get_den() == 1; });
}

// Fraction-free remainder: lc(b)^(deg a - deg b + 1) * a mod b.
RatPoly pseudo_remainder(const RatPoly& a, const RatPoly& b) {
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  const Rat& lb = b.leading();
  const auto& bc = b.coeffs();
  int dr = a.degree();
  while (dr >= db) {
    const Rat lr = r[dr];
    for (auto& c : r) c *= lb;
    const int shift = dr - db;
    for (int i = 0; i <= db; ++i) r[i + shift] -= lr * bc[i];
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  return RatPoly(std::move(r));
}

}  // namespace

RatPoly::RatPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RatPoly::RatPoly(std::initializer_list<Rat> coeffs) : coeffs_(coeffs) { trim(); }

RatPoly RatPoly::constant(const Rat& c) { return RatPoly(std::vector<Rat>{c}); }

RatPoly RatPoly::monomial(const Rat& c, int degree) {
  std::vector<Rat> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat RatPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Rat(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

Rat RatPoly::evaluate(const Rat& x) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

int RatPoly::sign_at(const Rat& x) const {
  if (coeffs_.empty()) return 0;
  if (!all_integral(coeffs_)) return sgn(evaluate(x));
  // Homogenized Horner over the integers: sum a_i n^i d^(D-i), d > 0.
  const mpz_class& n = x.get_num();
  const mpz_class& d = x.get_den();
  mpz_class acc = coeffs_.back().get_num();
  mpz_class dpow = d;
  mpz_class tmp;
  for (int i = degree() - 1; i >= 0; --i) {
    acc *= n;
    tmp = coeffs_[static_cast<std::size_t>(i)].get_num() * dpow;
    acc += tmp;
    if (i > 0) dpow *= d;
  }
  return sgn(acc);
}

double RatPoly::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rat> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return RatPoly(std::move(d));
}

RatPoly RatPoly::primitive() const {
  if (coeffs_.empty()) return {};
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& c : coeffs_) {
    if (c == 0) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rat scale(den_lcm, num_gcd);
  scale.canonicalize();
  RatPoly out = *this;
  for (auto& c : out.coeffs_) c *= scale;
  return out;
}

RatPoly RatPoly::monic() const {
  if (coeffs_.empty()) return {};
  RatPoly out = *this;
  const Rat lc = leading();
  for (auto& c : out.coeffs_) c /= lc;
  return out;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  Rat tmp;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpq_mul(tmp.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
      out[i + j] += tmp;
    }
  }
  return RatPoly(std::move(out));
}

RatPoly& RatPoly::operator*=(const RatPoly& o) { return *this = *this * o; }

RatPoly& RatPoly::operator*=(const Rat& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

RatPoly operator-(RatPoly a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

std::string RatPoly::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    os << Rat(abs(c)).get_str();
    if (i > 0) os << " * " << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw DegenerateInput("divmod: division by the zero polynomial");
  if (a.degree() < b.degree()) return {RatPoly{}, a};
  std::vector<Rat> r = a.coeffs();
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const auto& bc = b.coeffs();
  const Rat& lb = b.leading();
  const int db = b.degree();
  Rat tmp;
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rat factor = r[static_cast<std::size_t>(k + db)] / lb;
    q[static_cast<std::size_t>(k)] = factor;
    if (factor == 0) continue;
    for (int i = 0; i <= db; ++i) {
      mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), bc[static_cast<std::size_t>(i)].get_mpq_t());
      r[static_cast<std::size_t>(i + k)] -= tmp;
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly exact_divide(const RatPoly& a, const RatPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw NotAFactor("exact_divide: nonzero remainder " + r.to_string());
  return q;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a.primitive();
  RatPoly y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    RatPoly r = pseudo_remainder(x, y).primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

RatPoly pow(const RatPoly& p, unsigned e) {
  RatPoly result = RatPoly::constant(1);
  RatPoly base = p;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base *= base;
  }
  return result;
}

RatPoly square_free_part(const RatPoly& p) {
  if (p.degree() <= 0) return p;
  return exact_divide(p, gcd(p, p.derivative())).primitive();
}

std::vector<RatPoly> square_free_factorization(const RatPoly& p) {
  std::vector<RatPoly> out;
  if (p.degree() <= 0) return out;
  const RatPoly dp = p.derivative();
  const RatPoly a0 = gcd(p, dp);
  RatPoly b = exact_divide(p, a0);
  RatPoly c = exact_divide(dp, a0);
  RatPoly d = c - b.derivative();
  while (b.degree() > 0) {
    RatPoly a = gcd(b, d);
    b = exact_divide(b, a);
    c = exact_divide(d, a);
    d = c - b.derivative();
    out.push_back(a.primitive());
  }
  return out;
}

}  // namespace orbita::poly
