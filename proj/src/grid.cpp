#include "bpw/grid.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace bpw {

Grid Grid::make(double L, Eigen::Index M) {
  if (!(L > 0.0) || !std::isfinite(L))
    throw std::invalid_argument("Grid: length must be positive and finite");
  if (M < 32 || (M & (M - 1)) != 0)
    throw std::invalid_argument("Grid: point count must be a power of two >= 32");
  Grid g;
  g.length = L;
  g.size = M;
  g.dx = L / static_cast<double>(M);
  g.x = Array::LinSpaced(M, 0.0, L - g.dx);
  g.xi.resize(M);
  const double base = 2.0 * M_PI / L;
  for (Eigen::Index k = 0; k < M; ++k) {
    const Eigen::Index signed_k = (k < M / 2) ? k : k - M;
    g.xi[k] = base * static_cast<double>(signed_k);
  }
  return g;
}

namespace {
Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}
}  // namespace

ComplexArray fft_forward(const Array& v) {
  Eigen::VectorXcd spec;
  Eigen::VectorXd in = v.matrix();
  fft_engine().fwd(spec, in);
  return spec.array();
}

Array fft_inverse(const ComplexArray& spec) {
  Eigen::VectorXd out;
  Eigen::VectorXcd in = spec.matrix();
  fft_engine().inv(out, in);
  return out.array();
}

void require_finite(const Array& v, const char* what) {
  if (!v.isFinite().all())
    throw std::domain_error(std::string(what) + ": non-finite values");
}

Array spectral_derivative(const Grid& g, const Array& f, int order) {
  if (order < 1) throw std::invalid_argument("spectral_derivative: order must be >= 1");
  if (f.size() != g.size) throw std::invalid_argument("spectral_derivative: grid mismatch");
  require_finite(f, "spectral_derivative");
  ComplexArray spec = fft_forward(f);
  const std::complex<double> iunit(0.0, 1.0);
  for (Eigen::Index k = 0; k < g.size; ++k)
    spec[k] *= std::pow(iunit * g.xi[k], order);
  if (order % 2 == 1) spec[g.nyquist_bin()] = 0.0;
  return fft_inverse(spec);
}

Array fourier_multiplier_apply(const Grid& g, const Array& f,
                               const std::function<double(double)>& m) {
  Array symbol(g.size);
  for (Eigen::Index k = 0; k < g.size; ++k) symbol[k] = m(g.xi[k]);
  return fourier_multiplier_apply(g, f, symbol);
}

Array fourier_multiplier_apply(const Grid& g, const Array& f, const Array& symbol) {
  if (f.size() != g.size || symbol.size() != g.size)
    throw std::invalid_argument("fourier_multiplier_apply: grid mismatch");
  require_finite(f, "fourier_multiplier_apply");
  require_finite(symbol, "fourier_multiplier_apply symbol");
  ComplexArray spec = fft_forward(f);
  spec *= symbol.cast<std::complex<double>>();
  return fft_inverse(spec);
}

double sobolev_norm(const Grid& g, const Array& f, double s) {
  if (f.size() != g.size) throw std::invalid_argument("sobolev_norm: grid mismatch");
  require_finite(f, "sobolev_norm");
  ComplexArray spec = fft_forward(f);
  const double w = g.length / (static_cast<double>(g.size) * static_cast<double>(g.size));
  double acc = 0.0;
  for (Eigen::Index k = 0; k < g.size; ++k)
    acc += std::pow(1.0 + g.xi[k] * g.xi[k], s) * std::norm(spec[k]);
  return std::sqrt(acc * w);
}

double sobolev_mu_norm(const Grid& g, const Array& f, double s, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("sobolev_mu_norm: mu must be positive");
  const double a = sobolev_norm(g, f, s);
  const double b = sobolev_norm(g, spectral_derivative(g, f, 1), s);
  return std::sqrt(a * a + mu * b * b);
}

double inner_product(const Grid& g, const Array& a, const Array& b) {
  if (a.size() != g.size || b.size() != g.size)
    throw std::invalid_argument("inner_product: grid mismatch");
  return g.dx * (a * b).sum();
}

namespace {
double smooth_cutoff(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace

double BumpEta::operator()(double xi) const {
  const double a = std::abs(xi);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double num = smooth_cutoff(2.0 - a);
  return num / (num + smooth_cutoff(a - 1.0));
}

double BumpEta::phi(double xi) {
  const BumpEta eta;
  return eta(xi) - eta(2.0 * xi);
}

Array lp_project(const Grid& g, const Array& f, long N) {
  if (N < 1 || (N & (N - 1)) != 0)
    throw std::invalid_argument("lp_project: N must be a dyadic integer >= 1");
  const BumpEta eta;
  Array symbol(g.size);
  for (Eigen::Index k = 0; k < g.size; ++k)
    symbol[k] = (N == 1) ? eta(g.xi[k])
                         : BumpEta::phi(g.xi[k] / static_cast<double>(N));
  return fourier_multiplier_apply(g, f, symbol);
}

std::vector<long> dyadic_blocks(const Grid& g) {
  std::vector<long> blocks{1};
  // phi_N vanishes on the grid once N/2 exceeds the largest frequency.
  while (static_cast<double>(blocks.back()) / 2.0 <= g.max_frequency())
    blocks.push_back(blocks.back() * 2);
  return blocks;
}

Array dealias_2_3(const Grid& g, const Array& f) {
  ComplexArray spec = fft_forward(f);
  const Eigen::Index keep = g.size / 3;
  for (Eigen::Index k = 0; k < g.size; ++k) {
    const Eigen::Index signed_k = (k < g.size / 2) ? k : k - g.size;
    if (std::abs(signed_k) > keep) spec[k] = 0.0;
  }
  return fft_inverse(spec);
}

Array quadratic_product(const Grid& g, const Array& f, const Array& h) {
  return dealias_2_3(g, dealias_2_3(g, f) * dealias_2_3(g, h));
}

}  // namespace bpw
