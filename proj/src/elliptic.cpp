#include "bpw/elliptic.hpp"

#include <cmath>
#include <stdexcept>

namespace bpw {

Eigen::MatrixXd spectral_derivative_matrix(const Grid& g) {
  const Eigen::Index M = g.size;
  Eigen::MatrixXd D(M, M);
  Array e = Array::Zero(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    e[j] = 1.0;
    D.col(j) = spectral_derivative(g, e, 1).matrix();
    e[j] = 0.0;
  }
  return D;
}

TbOperator TbOperator::assemble(const Grid& g, const Bathymetry& bath, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("TbOperator: mu must be > 0");
  if (bath.b.size() != g.size) throw std::invalid_argument("TbOperator: grid mismatch");
  TbOperator op;
  op.grid = g;
  op.bath = bath;
  op.mu = mu;

  Array flux = bath.h_b.square() * bath.b_x;
  op.g_full = bath.h_b + (bath.beta * mu / 2.0) * spectral_derivative(g, flux, 1) +
              (bath.beta * bath.beta * mu) * bath.h_b * bath.b_x.square();

  const Eigen::MatrixXd D = spectral_derivative_matrix(g);
  const Eigen::VectorXd h3 = bath.h_b.cube().matrix();
  op.A = (mu / 3.0) * D.transpose() * h3.asDiagonal() * D;
  op.A += Eigen::MatrixXd(op.g_full.matrix().asDiagonal());
  op.A = (0.5 * (op.A + op.A.transpose())).eval();

  op.llt.compute(op.A);
  if (op.llt.info() != Eigen::Success)
    throw std::runtime_error(
        "TbOperator: discretization not positive definite "
        "(depth/smallness hypothesis violated)");
  return op;
}

Array apply_Tb(const TbOperator& op, const Array& v) {
  if (v.size() != op.grid.size) throw std::invalid_argument("apply_Tb: grid mismatch");
  require_finite(v, "apply_Tb");
  return (op.A * v.matrix()).array();
}

Array solve_Tb(const TbOperator& op, const Array& f) {
  if (f.size() != op.grid.size) throw std::invalid_argument("solve_Tb: grid mismatch");
  require_finite(f, "solve_Tb");
  return op.llt.solve(f.matrix()).array();
}

double coercivity_form(const TbOperator& op, const Array& u) {
  const Grid& g = op.grid;
  const Bathymetry& bath = op.bath;
  if (u.size() != g.size) throw std::invalid_argument("coercivity_form: grid mismatch");
  const Array ux = spectral_derivative(g, u, 1);
  const Array mix =
      bath.h_b / std::sqrt(3.0) * ux - (std::sqrt(3.0) * bath.beta / 2.0) * bath.b_x * u;
  const Array ones = Array::Ones(g.size);
  double form = inner_product(g, bath.h_b * u.square(), ones);
  form += op.mu * inner_product(g, bath.h_b * mix.square(), ones);
  form += (op.mu * bath.beta * bath.beta / 4.0) *
          inner_product(g, bath.h_b * bath.b_x.square() * u.square(), ones);
  return form;
}

double coercivity_constant(double h0, double mu) {
  return h0 * std::min(1.0, mu * h0 * h0 / 18.0);
}

Array helmholtz_solve(const Grid& g, const Array& f, double a) {
  if (!(a >= 0.0)) throw std::invalid_argument("helmholtz_solve: a must be >= 0");
  if (a == 0.0) return f;
  return fourier_multiplier_apply(g, f,
                                  [a](double xi) { return 1.0 / (1.0 + a * xi * xi); });
}

double kernel_Kmu(double mu, double x) {
  if (!(mu > 0.0)) throw std::invalid_argument("kernel_Kmu: mu must be > 0");
  const double lam = std::sqrt(3.0 / mu);
  return 0.5 * lam * std::exp(-lam * std::abs(x));
}

double kernel_kmu_derivative(double mu, double x) {
  if (!(mu > 0.0)) throw std::invalid_argument("kernel_kmu_derivative: mu must be > 0");
  if (x == 0.0) return 0.0;
  const double lam = std::sqrt(3.0 / mu);
  const double sgn = x > 0.0 ? 1.0 : -1.0;
  return -(3.0 / (2.0 * mu)) * sgn * std::exp(-lam * std::abs(x));
}

}  // namespace bpw
