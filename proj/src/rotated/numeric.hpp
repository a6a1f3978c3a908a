#pragma once

#include <Eigen/Dense>
#include <vector>

#include "orbita/poly/mpoly.hpp"

namespace orbita::detail {

/// MPoly flattened for fast double evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const poly::MPoly& p);
  double operator()(const double* x) const;

 private:
  std::vector<double> coeff_;
  std::vector<std::uint32_t> start_;  // factor range of term i: [start_[i], start_[i + 1])
  std::vector<std::uint16_t> var_, exp_;
};

/// A square or overdetermined polynomial system with its Jacobian.
class CompiledSystem {
 public:
  CompiledSystem(const std::vector<poly::MPoly>& eqs, const std::vector<std::string>& vars);
  std::size_t size() const { return f_.size(); }
  std::size_t dim() const { return n_; }
  Eigen::VectorXd value(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

 private:
  std::size_t n_ = 0;
  std::vector<CompiledPoly> f_;
  std::vector<std::vector<CompiledPoly>> df_;
};

/// Levenberg-Marquardt on F(x) = 0, accepting only steps that lower |F|.
/// Returns the final |F|.
double solve_lm(const CompiledSystem& sys, Eigen::VectorXd& x, int max_iterations, double tol = 1e-14);

}  // namespace orbita::detail
