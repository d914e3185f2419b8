// Uniform periodic grid, FFT helpers, Fourier multipliers, Sobolev norms,
// and the Littlewood-Paley projector family.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace bpw {

using Array = Eigen::ArrayXd;
using ComplexArray = Eigen::ArrayXcd;

/// Uniform grid on the torus [0, L). M must be a power of two >= 32.
/// Frequencies follow the FFT bin layout: bin k holds xi = 2*pi*k/L for
/// k in {0,...,M/2-1} and xi = 2*pi*(k-M)/L for k in {M/2,...,M-1}.
struct Grid {
  double length = 0.0;
  Eigen::Index size = 0;
  double dx = 0.0;
  Array x;   // nodes i*dx
  Array xi;  // signed frequency of each FFT bin

  static Grid make(double L, Eigen::Index M);

  Eigen::Index nyquist_bin() const { return size / 2; }
  double max_frequency() const { return M_PI / dx; }
};

/// Unnormalized forward DFT of a real field (full complex spectrum).
ComplexArray fft_forward(const Array& v);
/// Inverse of fft_forward (includes the 1/M scaling); returns the real part.
Array fft_inverse(const ComplexArray& spec);

/// Throws std::domain_error if any value is non-finite.
void require_finite(const Array& v, const char* what);

/// d^order/dx^order via multiplication by (i*xi)^order.
/// The Nyquist coefficient of odd-order derivatives is zeroed.
Array spectral_derivative(const Grid& g, const Array& f, int order);

/// Applies a real symbol m(xi) bin-wise in frequency space.
Array fourier_multiplier_apply(const Grid& g, const Array& f,
                               const std::function<double(double)>& m);
/// Same with a precomputed per-bin symbol.
Array fourier_multiplier_apply(const Grid& g, const Array& f, const Array& symbol);

/// H^s norm with the Parseval weight fixed so that s = 0 equals the
/// continuum L^2(0, L) norm: |f|^2 = sum_k (1+xi_k^2)^s |f_hat_k|^2 * L/M^2.
double sobolev_norm(const Grid& g, const Array& f, double s);

/// mu-weighted norm: (|f|_{H^s}^2 + mu*|f_x|_{H^s}^2)^{1/2}.
double sobolev_mu_norm(const Grid& g, const Array& f, double s, double mu);

/// Continuum inner product <f, g> = dx * sum f_i g_i (trapezoid on the torus).
double inner_product(const Grid& g, const Array& a, const Array& b);

/// Smooth even bump: 1 on [-1,1], 0 outside (-2,2), values in [0,1].
struct BumpEta {
  double operator()(double xi) const;
  /// phi(xi) = eta(xi) - eta(2 xi); phi_1 := eta by convention.
  static double phi(double xi);
};

/// Littlewood-Paley projector P_N (N dyadic >= 1): multiplier by phi(xi/N),
/// or by eta(xi) when N = 1.
Array lp_project(const Grid& g, const Array& f, long N);

/// Dyadic blocks N = 1, 2, 4, ... sufficient to cover the grid's frequencies.
std::vector<long> dyadic_blocks(const Grid& g);

/// Zeroes all bins with |k| > M/3 (2/3-rule truncation).
Array dealias_2_3(const Grid& g, const Array& f);

/// Dealiased pointwise product: truncate inputs, multiply, truncate result.
Array quadratic_product(const Grid& g, const Array& f, const Array& h);

}  // namespace bpw
