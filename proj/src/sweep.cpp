#include "orbita/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "orbita/parallel.hpp"

namespace orbita {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

}  // namespace

SweepRecord sweep_cell(double e, double alpha_deg, const Case1Config& case1) {
  SweepRecord r;
  r.e = e;
  r.alpha_deg = alpha_deg;
  try {
    const RotatedInput in = params_from_angle(e, alpha_deg);
    r.a = in.a;
    r.b = in.b;
    const RotatedResult res = best_rotated_transfer(in, {}, case1);
    r.best_f1 = res.winner.f1;
    r.best_case = to_string(res.winner.case_tag);
    r.separation_deg = res.winner.separation_angle_deg;
    r.apogee_f1 = apogee_to_apogee_cost(in);
    r.ratio_pct = 100.0 * r.best_f1 / r.apogee_f1;
    r.case2b_best_f1 = std::numeric_limits<double>::quiet_NaN();
    for (const auto& c : res.all) {
      if (c.case_tag == RotatedCase::case1) r.case1_found = true;
      const bool is2b = c.case_tag == RotatedCase::case2b_closed || c.case_tag == RotatedCase::case2b_general;
      if (is2b && !(c.f1 >= r.case2b_best_f1)) r.case2b_best_f1 = c.f1;
    }
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  return r;
}

std::vector<SweepRecord> sweep_rotated(const std::vector<double>& es, const std::vector<double>& alphas,
                                       int threads, const Case1Config& case1) {
  std::vector<SweepRecord> rows(es.size() * alphas.size());
  parallel_for(rows.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      rows[i] = sweep_cell(es[i / alphas.size()], alphas[i % alphas.size()], case1);
  });
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows) {
  os << "e,alpha,a,b,best_f1,best_case,separation_deg,apogee_f1,ratio_pct,case1_found,case2b_best_f1\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    const bool ok = r.error.empty();
    os << fmt(r.e) << ',' << fmt(r.alpha_deg) << ',' << r.a << ',' << r.b << ',' << fmt(ok ? r.best_f1 : nan)
       << ',' << (ok ? r.best_case : "error") << ',' << fmt(ok ? r.separation_deg : nan) << ','
       << fmt(ok ? r.apogee_f1 : nan) << ',' << fmt(ok ? r.ratio_pct : nan) << ','
       << (r.case1_found ? "true" : "false") << ',' << fmt(ok ? r.case2b_best_f1 : nan) << '\n';
  }
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(parse_number(item));
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step, got '" + text + "'");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("empty or non-increasing range '" + text + "'");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
      // Round away the accumulated binary error so 0.1:0.9:0.1 gives 0.3, not 0.30000000000000004.
      const double v = start + static_cast<double>(i) * step;
      out.push_back(std::stod(fmt(v)));
    }
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_number(item));
  if (out.empty()) throw std::invalid_argument("empty value list");
  return out;
}

}  // namespace orbita
