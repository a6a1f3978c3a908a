#include "orbita/poly/mpoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "orbita/errors.hpp"

namespace orbita::poly {

std::vector<std::string> union_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

MPoly::MPoly(std::vector<std::string> vars) { set_vars(std::move(vars)); }

void MPoly::set_vars(std::vector<std::string> vars) {
  vars_ = std::move(vars);
  const auto n = static_cast<unsigned>(vars_.size());
  if (n > 64) throw std::invalid_argument("MPoly: at most 64 variables");
  bits_ = n == 0 ? 0 : std::min(32u, 64u / n);
}

MPoly MPoly::constant(std::vector<std::string> vars, const Rat& c) {
  MPoly p(std::move(vars));
  if (c != 0) p.terms_.push_back({0, c});
  return p;
}

MPoly MPoly::variable(std::vector<std::string> vars, std::string_view name) {
  MPoly p(std::move(vars));
  Exponents e(p.vars_.size(), 0);
  e[p.index_of(name)] = 1;
  p.terms_.push_back({p.pack(e), Rat(1)});
  return p;
}

MPoly MPoly::from_univariate(const RatPoly& u, std::vector<std::string> vars, std::string_view var) {
  MPoly p(std::move(vars));
  const std::size_t idx = p.index_of(var);
  Exponents e(p.vars_.size(), 0);
  for (int k = u.degree(); k >= 0; --k) {
    const Rat c = u.coeff(k);
    if (c == 0) continue;
    e[idx] = static_cast<unsigned>(k);
    p.terms_.push_back({p.pack(e), c});
  }
  p.sort_and_merge();
  return p;
}

std::size_t MPoly::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  throw std::invalid_argument("MPoly: unknown variable '" + std::string(name) + "'");
}

bool MPoly::has_variable(std::string_view name) const {
  return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

std::uint64_t MPoly::field_mask() const {
  return bits_ >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits_) - 1);
}

unsigned MPoly::field(std::uint64_t key, std::size_t var) const {
  const unsigned shift = bits_ * static_cast<unsigned>(vars_.size() - 1 - var);
  return static_cast<unsigned>((key >> shift) & field_mask());
}

std::uint64_t MPoly::pack(const Exponents& e) const {
  std::uint64_t key = 0;
  const std::uint64_t mask = field_mask();
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (e[i] > mask) throw std::overflow_error("MPoly: exponent exceeds packed field width");
    key = (bits_ == 0 ? 0 : key << bits_) | e[i];
  }
  return key;
}

MPoly::Exponents MPoly::unpack(std::uint64_t key) const {
  Exponents e(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) e[i] = field(key, i);
  return e;
}

std::vector<unsigned> MPoly::max_exponents() const {
  std::vector<unsigned> m(vars_.size(), 0);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < vars_.size(); ++i) m[i] = std::max(m[i], field(t.key, i));
  return m;
}

void MPoly::sort_and_merge() {
  std::sort(terms_.begin(), terms_.end(), [](const Packed& a, const Packed& b) { return a.key > b.key; });
  std::vector<Packed> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().key == t.key) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

void MPoly::align(MPoly& a, MPoly& b) {
  if (a.vars_ == b.vars_) return;
  const auto u = union_variables(a.vars_, b.vars_);
  if (a.vars_ != u) a = a.with_variables(u);
  if (b.vars_ != u) b = b.with_variables(u);
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0); }

std::vector<MPoly::Term> MPoly::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({unpack(t.key), t.coeff});
  return out;
}

void MPoly::add_term(const Exponents& e, const Rat& c) {
  if (e.size() != vars_.size()) throw std::invalid_argument("MPoly::add_term: exponent length mismatch");
  if (c == 0) return;
  const std::uint64_t key = pack(e);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Packed& t, std::uint64_t k) { return t.key > k; });
  if (it != terms_.end() && it->key == key) {
    it->coeff += c;
    if (it->coeff == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Packed{key, c});
  }
}

int MPoly::degree(std::string_view var) const {
  if (terms_.empty()) return -1;
  const std::size_t i = index_of(var);
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, field(t.key, i));
  return static_cast<int>(d);
}

int MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  unsigned best = 0;
  for (const auto& t : terms_) {
    unsigned s = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) s += field(t.key, i);
    best = std::max(best, s);
  }
  return static_cast<int>(best);
}

std::vector<MPoly> MPoly::coefficients_in(std::string_view var) const {
  const std::size_t i = index_of(var);
  const int d = degree(var);
  std::vector<MPoly> out(static_cast<std::size_t>(std::max(d, -1) + 1), MPoly(vars_));
  const unsigned shift = bits_ * static_cast<unsigned>(vars_.size() - 1 - i);
  for (const auto& t : terms_) {
    const unsigned k = field(t.key, i);
    out[k].terms_.push_back({t.key - (static_cast<std::uint64_t>(k) << shift), t.coeff});
  }
  for (auto& c : out)
    std::sort(c.terms_.begin(), c.terms_.end(), [](const Packed& a, const Packed& b) { return a.key > b.key; });
  return out;
}

MPoly MPoly::coefficient(std::string_view var, unsigned k) const {
  auto all = coefficients_in(var);
  if (k >= all.size()) return MPoly(vars_);
  return std::move(all[k]);
}

MPoly MPoly::partial(std::string_view var) const {
  const std::size_t i = index_of(var);
  const unsigned shift = bits_ * static_cast<unsigned>(vars_.size() - 1 - i);
  MPoly out(vars_);
  for (const auto& t : terms_) {
    const unsigned k = field(t.key, i);
    if (k == 0) continue;
    out.terms_.push_back({t.key - (std::uint64_t{1} << shift), t.coeff * static_cast<long>(k)});
  }
  return out;
}

MPoly MPoly::substitute(std::string_view var, const Rat& value) const {
  return substitute(var, MPoly::constant(vars_, value));
}

MPoly MPoly::substitute(std::string_view var, const MPoly& value) const {
  const auto coeffs = coefficients_in(var);
  MPoly result(vars_);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    result *= value;
    result += *it;
  }
  return result;
}

Rat MPoly::evaluate(std::span<const Rat> values) const {
  if (values.size() != vars_.size()) throw std::invalid_argument("MPoly::evaluate: wrong number of values");
  const auto maxe = max_exponents();
  std::vector<std::vector<Rat>> powers(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    powers[i].resize(maxe[i] + 1);
    powers[i][0] = 1;
    for (unsigned k = 1; k <= maxe[i]; ++k) powers[i][k] = powers[i][k - 1] * values[i];
  }
  Rat acc = 0, term;
  for (const auto& t : terms_) {
    term = t.coeff;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const unsigned k = field(t.key, i);
      if (k != 0) term *= powers[i][k];
    }
    acc += term;
  }
  return acc;
}

double MPoly::evaluate(std::span<const double> values) const {
  if (values.size() != vars_.size()) throw std::invalid_argument("MPoly::evaluate: wrong number of values");
  const auto maxe = max_exponents();
  std::vector<std::vector<double>> powers(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    powers[i].resize(maxe[i] + 1);
    powers[i][0] = 1.0;
    for (unsigned k = 1; k <= maxe[i]; ++k) powers[i][k] = powers[i][k - 1] * values[i];
  }
  double acc = 0.0;
  for (const auto& t : terms_) {
    double term = t.coeff.get_d();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const unsigned k = field(t.key, i);
      if (k != 0) term *= powers[i][k];
    }
    acc += term;
  }
  return acc;
}

RatPoly MPoly::to_univariate(std::string_view var) const {
  const std::size_t idx = index_of(var);
  std::vector<Rat> c(static_cast<std::size_t>(std::max(degree(var), -1) + 1));
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (i != idx && field(t.key, i) != 0)
        throw std::invalid_argument("MPoly::to_univariate: polynomial depends on " + vars_[i]);
    c[field(t.key, idx)] = t.coeff;
  }
  return RatPoly(std::move(c));
}

MPoly MPoly::with_variables(const std::vector<std::string>& vars) const {
  MPoly out(vars);
  std::vector<std::size_t> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) map[i] = out.index_of(vars_[i]);
  out.terms_.reserve(terms_.size());
  Exponents e(vars.size());
  for (const auto& t : terms_) {
    std::fill(e.begin(), e.end(), 0u);
    for (std::size_t i = 0; i < vars_.size(); ++i) e[map[i]] = field(t.key, i);
    out.terms_.push_back({out.pack(e), t.coeff});
  }
  out.sort_and_merge();
  return out;
}

Rat MPoly::primitive_scale() const {
  if (terms_.empty()) return Rat(1);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rat s(den_lcm, num_gcd);
  s.canonicalize();
  return s;
}

MPoly MPoly::primitive() const { return *this * primitive_scale(); }

MPoly& MPoly::operator+=(const MPoly& o) { return *this = *this + o; }
MPoly& MPoly::operator-=(const MPoly& o) { return *this = *this - o; }
MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

MPoly operator+(const MPoly& a_in, const MPoly& b_in) {
  MPoly a = a_in, b = b_in;
  MPoly::align(a, b);
  MPoly out(a.vars_);
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].key > b.terms_[j].key)) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].key > a.terms_[i].key) {
      out.terms_.push_back(b.terms_[j++]);
    } else {
      Rat c = a.terms_[i].coeff + b.terms_[j].coeff;
      if (c != 0) out.terms_.push_back({a.terms_[i].key, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

MPoly operator-(MPoly a) {
  for (auto& t : a.terms_) t.coeff = -t.coeff;
  return a;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator+(const MPoly& a, const Rat& c) { return a + MPoly::constant(a.vars_, c); }

MPoly operator*(const MPoly& a_in, const MPoly& b_in) {
  MPoly a = a_in, b = b_in;
  MPoly::align(a, b);
  MPoly out(a.vars_);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  const auto ma = a.max_exponents();
  const auto mb = b.max_exponents();
  const std::uint64_t mask = a.field_mask();
  for (std::size_t i = 0; i < ma.size(); ++i)
    if (static_cast<std::uint64_t>(ma[i]) + mb[i] > mask)
      throw std::overflow_error("MPoly: product exponent exceeds packed field width");

  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(a.terms_.size() * b.terms_.size() / 2 + 16);
  out.terms_.reserve(index.bucket_count());
  Rat tmp;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      const std::uint64_t key = ta.key + tb.key;
      mpq_mul(tmp.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      auto [it, inserted] = index.try_emplace(key, out.terms_.size());
      if (inserted) {
        out.terms_.push_back({key, tmp});
      } else {
        auto& c = out.terms_[it->second].coeff;
        mpq_add(c.get_mpq_t(), c.get_mpq_t(), tmp.get_mpq_t());
      }
    }
  }
  std::erase_if(out.terms_, [](const MPoly::Packed& t) { return t.coeff == 0; });
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const MPoly::Packed& x, const MPoly::Packed& y) { return x.key > y.key; });
  return out;
}

bool operator==(const MPoly& a_in, const MPoly& b_in) {
  MPoly a = a_in, b = b_in;
  MPoly::align(a, b);
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

MPoly pow(const MPoly& p, unsigned e) {
  MPoly result = MPoly::constant(p.variables(), 1);
  MPoly base = p;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base *= base;
  }
  return result;
}

MPoly exact_divide(const MPoly& a_in, const MPoly& b_in) {
  if (b_in.is_zero()) throw DegenerateInput("exact_divide: division by the zero polynomial");
  MPoly a = a_in, b = b_in;
  MPoly::align(a, b);
  MPoly q(a.vars_);
  if (a.is_zero()) return q;

  std::map<std::uint64_t, Rat, std::greater<>> rem;
  for (const auto& t : a.terms_) rem.emplace(t.key, t.coeff);
  const auto& lead = b.terms_.front();
  const std::size_t n = a.vars_.size();
  Rat qc, tmp;
  while (!rem.empty()) {
    auto top = rem.begin();
    for (std::size_t i = 0; i < n; ++i)
      if (a.field(top->first, i) < b.field(lead.key, i))
        throw NotAFactor("exact_divide: divisor does not divide the dividend");
    const std::uint64_t qkey = top->first - lead.key;
    mpq_div(qc.get_mpq_t(), top->second.get_mpq_t(), lead.coeff.get_mpq_t());
    q.terms_.push_back({qkey, qc});
    for (const auto& tb : b.terms_) {
      mpq_mul(tmp.get_mpq_t(), qc.get_mpq_t(), tb.coeff.get_mpq_t());
      auto [it, inserted] = rem.try_emplace(qkey + tb.key);
      it->second -= tmp;
      if (it->second == 0) rem.erase(it);
    }
  }
  return q;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0\n";
  std::vector<Term> ts = terms();
  std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return x.exponents < y.exponents; });
  std::ostringstream os;
  for (const auto& t : ts) {
    os << t.coeff.get_str();
    bool first = true;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      os << (first ? " * " : " ") << vars_[i] << "^" << t.exponents[i];
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace orbita::poly
