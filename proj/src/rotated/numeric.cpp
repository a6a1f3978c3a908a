#include "numeric.hpp"

#include <cmath>

namespace orbita::detail {

CompiledPoly::CompiledPoly(const poly::MPoly& p) {
  for (const auto& t : p.terms()) {
    coeff_.push_back(t.coeff.get_d());
    start_.push_back(static_cast<std::uint32_t>(var_.size()));
    for (std::size_t v = 0; v < t.exponents.size(); ++v) {
      if (t.exponents[v] == 0) continue;
      var_.push_back(static_cast<std::uint16_t>(v));
      exp_.push_back(static_cast<std::uint16_t>(t.exponents[v]));
    }
  }
  start_.push_back(static_cast<std::uint32_t>(var_.size()));
}

double CompiledPoly::operator()(const double* x) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < coeff_.size(); ++i) {
    double t = coeff_[i];
    for (std::uint32_t j = start_[i]; j < start_[i + 1]; ++j) {
      const double b = x[var_[j]];
      for (unsigned k = 0; k < exp_[j]; ++k) t *= b;
    }
    acc += t;
  }
  return acc;
}

CompiledSystem::CompiledSystem(const std::vector<poly::MPoly>& eqs, const std::vector<std::string>& vars)
    : n_(vars.size()) {
  for (const auto& e : eqs) {
    const poly::MPoly q = e.with_variables(vars);
    f_.emplace_back(q);
    std::vector<CompiledPoly> row;
    for (const auto& v : vars) row.emplace_back(q.partial(v));
    df_.push_back(std::move(row));
  }
}

Eigen::VectorXd CompiledSystem::value(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(f_.size());
  for (std::size_t i = 0; i < f_.size(); ++i) out[i] = f_[i](x.data());
  return out;
}

Eigen::MatrixXd CompiledSystem::jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd J(f_.size(), n_);
  for (std::size_t i = 0; i < f_.size(); ++i)
    for (std::size_t j = 0; j < n_; ++j) J(i, j) = df_[i][j](x.data());
  return J;
}

double solve_lm(const CompiledSystem& sys, Eigen::VectorXd& x, int max_iterations, double tol) {
  Eigen::VectorXd F = sys.value(x);
  double norm = F.norm();
  double mu = 1e-6;
  for (int it = 0; it < max_iterations && norm > tol && std::isfinite(norm); ++it) {
    const Eigen::MatrixXd J = sys.jacobian(x);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * F;
    bool accepted = false;
    for (int tries = 0; tries < 12 && !accepted; ++tries) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal().array() += mu * (1.0 + JtJ.diagonal().array());
      const Eigen::VectorXd step = A.ldlt().solve(-g);
      const Eigen::VectorXd xn = x + step;
      const Eigen::VectorXd Fn = sys.value(xn);
      const double nn = Fn.norm();
      if (std::isfinite(nn) && nn < norm) {
        x = xn;
        F = Fn;
        norm = nn;
        mu = std::max(mu * 0.1, 1e-15);
        accepted = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return norm;
}

}  // namespace orbita::detail
