// The dispersive operator T_b = h_b(1 + mu*T[h_b]) in self-adjoint form,
// its inversion, the Helmholtz multiplier inverse, and the explicit kernel.
#pragma once

#include "bpw/fields.hpp"
#include "bpw/grid.hpp"

namespace bpw {

/// Dense symmetric spectral-Galerkin discretization of
///   T_b v = -(mu/3) (h_b^3 v_x)_x + g_full * v,
/// with g_full = h_b + (beta*mu/2) d/dx(h_b^2 b_x) + beta^2*mu*h_b*b_x^2
/// (the expansion of h_b(1 + mu*T[h_b])). Assembled once per bathymetry and
/// factored by Cholesky; immutable afterwards.
struct TbOperator {
  Grid grid;
  Bathymetry bath;
  double mu = 0.0;
  Array g_full;
  Eigen::MatrixXd A;
  Eigen::LLT<Eigen::MatrixXd> llt;

  /// Throws std::runtime_error if the discretization is not positive definite
  /// (signals a depth/smallness hypothesis violation).
  static TbOperator assemble(const Grid& g, const Bathymetry& bath, double mu);
};

/// Dense matrix of the spectral first derivative (antisymmetric; the Nyquist
/// mode is annihilated, matching spectral_derivative).
Eigen::MatrixXd spectral_derivative_matrix(const Grid& g);

/// Matrix-vector product A*v.
Array apply_Tb(const TbOperator& op, const Array& v);

/// Solves A*u = f via the stored Cholesky factorization.
Array solve_Tb(const TbOperator& op, const Array& f);

/// Sum-of-squares form
///   a(u,u) = I(h_b u^2) + mu*I(h_b ((h_b/sqrt3) u_x - (sqrt3 beta/2) b_x u)^2)
///          + (mu beta^2/4)*I(h_b b_x^2 u^2),
/// which must equal <apply_Tb(u), u>.
double coercivity_form(const TbOperator& op, const Array& u);

/// Lower coercivity constant h0 * min(1, mu*h0^2/18).
double coercivity_constant(double h0, double mu);

/// Fourier multiplier 1/(1 + a*xi^2); a = 0 is the identity.
Array helmholtz_solve(const Grid& g, const Array& f, double a);

/// K_mu(x) = (1/2) sqrt(3/mu) exp(-sqrt(3/mu)|x|), the kernel of
/// (1 - (mu/3) d^2/dx^2)^{-1} on the line.
double kernel_Kmu(double mu, double x);

/// k_mu = d/dx K_mu = -(3/(2 mu)) sign(x) exp(-sqrt(3/mu)|x|), with the
/// odd-extension convention k_mu(0) = 0.
double kernel_kmu_derivative(double mu, double x);

}  // namespace bpw
