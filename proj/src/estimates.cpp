#include "bpw/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bpw {

Array Corpus::sample(const Grid& g, int index) const {
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);

  // Coefficients are indexed by the continuum frequency so that the same
  // (seed, index) yields the same trigonometric polynomial on any grid.
  const double base = 2.0 * M_PI / g.length;
  const auto k_cut = static_cast<Eigen::Index>(std::floor(cutoff / base));
  ComplexArray spec = ComplexArray::Zero(g.size);
  const double scale = static_cast<double>(g.size);
  spec[0] = scale * gauss(rng);
  for (Eigen::Index k = 1; k <= std::min(k_cut, g.size / 2 - 1); ++k) {
    const double xi = base * static_cast<double>(k);
    const double amp = gauss(rng) * std::pow(1.0 + xi * xi, -decay / 2.0);
    const double phase = unif(rng);
    const std::complex<double> c =
        0.5 * amp * std::exp(std::complex<double>(0.0, phase));
    spec[k] = scale * c;
    spec[g.size - k] = scale * std::conj(c);
  }
  return fft_inverse(spec);
}

void RatioReport::finalize() {
  max = 0.0;
  mean = 0.0;
  p95 = 0.0;
  if (ratios.empty()) return;
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  max = sorted.back();
  for (double r : sorted) mean += r;
  mean /= static_cast<double>(sorted.size());
  const auto idx = static_cast<std::size_t>(
      std::ceil(0.95 * static_cast<double>(sorted.size()))) - 1;
  p95 = sorted[std::min(idx, sorted.size() - 1)];
}

namespace {
// Partial sums of the dyadic partition telescope to a rescaled eta:
// sum_{K <= 2^J} phi_K(xi) = eta(xi / 2^J).
Array eta_multiplier(const Grid& g, const Array& f, double block) {
  const BumpEta eta;
  return fourier_multiplier_apply(g, f,
                                  [&](double xi) { return eta(xi / block); });
}
}  // namespace

Array lp_project_lessless(const Grid& g, const Array& f, long N) {
  if (N < 8) throw std::invalid_argument("lp_project_lessless: N must be >= 8");
  return eta_multiplier(g, f, static_cast<double>(N) / 8.0);
}

Array lp_project_gtrsim(const Grid& g, const Array& f, long N) {
  if (N < 8) throw std::invalid_argument("lp_project_gtrsim: N must be >= 8");
  return f - eta_multiplier(g, f, static_cast<double>(N) / 8.0);
}

Array lp_project_tilde(const Grid& g, const Array& f, long N) {
  if (N < 8) throw std::invalid_argument("lp_project_tilde: N must be >= 8");
  return eta_multiplier(g, f, 4.0 * static_cast<double>(N)) -
         eta_multiplier(g, f, static_cast<double>(N) / 8.0);
}

double commutator_ratio(const Grid& g, const Array& f, const Array& gg, long N) {
  if (N < 8) throw std::invalid_argument("commutator_ratio: N must be >= 8");
  const Array F = lp_project_lessless(g, f, N);
  const Array gx = spectral_derivative(g, gg, 1);
  const Array comm = lp_project(g, F * gx, N) - F * lp_project(g, gx, N);
  const double lhs = sobolev_norm(g, comm, 0.0);
  const double fx_inf = spectral_derivative(g, f, 1).abs().maxCoeff();
  const double rhs = fx_inf * sobolev_norm(g, lp_project_tilde(g, gg, N), 0.0);
  const double floor = 1e-13 * (1.0 + f.abs().maxCoeff()) *
                       (1.0 + sobolev_norm(g, gg, 0.0));
  if (rhs <= floor) {
    if (lhs <= floor) return 0.0;
    throw std::domain_error("commutator_ratio: degenerate RHS with nonzero LHS");
  }
  return lhs / rhs;
}

double product_ratio_prod2(const Grid& g, const Array& f, const Array& h,
                           double t, double p, double r) {
  if (!(r + p > t + 0.5 && t + 0.5 > 0.0 && r >= t && p >= t))
    throw std::invalid_argument("prod2: exponents outside validity range");
  const double lhs = sobolev_norm(g, f * h, t);
  const double rhs = sobolev_norm(g, f, p) * sobolev_norm(g, h, r);
  return rhs == 0.0 ? 0.0 : lhs / rhs;
}

double product_ratio_prod3(const Grid& g, const Array& f, const Array& h, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("prod3: s must be >= 0");
  const double lhs = sobolev_norm(g, f * h, s);
  const double rhs = f.abs().maxCoeff() * sobolev_norm(g, h, s) +
                     sobolev_norm(g, f, s) * h.abs().maxCoeff();
  return rhs == 0.0 ? 0.0 : lhs / rhs;
}

double product_ratio_prod5(const Grid& g, const Array& f, const Array& h,
                           double theta) {
  const double lhs = sobolev_norm(g, f * h, theta);
  const double rhs = wsinf_proxy(g, f, std::abs(theta) + 0.1) * sobolev_norm(g, h, theta);
  return rhs == 0.0 ? 0.0 : lhs / rhs;
}

double product_ratio_prod6(const Grid& g, const Array& f, const Array& h,
                           double theta, long N) {
  if (N < 1 || (N & (N - 1)) != 0)
    throw std::invalid_argument("prod6: N must be dyadic >= 1");
  const Array hx = spectral_derivative(g, h, 1);
  const Array comm = lp_project(g, f * hx, N) - f * lp_project(g, hx, N);
  const double lhs = std::pow(static_cast<double>(N), theta) * sobolev_norm(g, comm, 0.0);
  const Array fx = spectral_derivative(g, f, 1);
  const double rhs = wsinf_proxy(g, fx, std::abs(theta) + 0.1) * sobolev_norm(g, h, theta);
  return rhs == 0.0 ? 0.0 : lhs / rhs;
}

double product_ratio_proN1(const Grid& g, const Array& f, const Array& h,
                           double s, long N) {
  if (!(s > 0.0)) throw std::invalid_argument("proN1: s must be > 0");
  const Array hx = spectral_derivative(g, h, 1);
  const Array loc = lp_project(g, lp_project_gtrsim(g, f, N) * hx, N);
  const double lhs = std::pow(static_cast<double>(N), s) * sobolev_norm(g, loc, 0.0);
  const double rhs = std::min(sobolev_norm(g, f, s + 1.0) * h.abs().maxCoeff(),
                              sobolev_norm(g, f, s) * hx.abs().maxCoeff());
  return rhs == 0.0 ? 0.0 : lhs / rhs;
}

double product_ratio_proN2(const Grid& g, const Array& f, const Array& h,
                           double s, long N) {
  if (!(s > 0.5)) throw std::invalid_argument("proN2: s must be > 1/2");
  const Array hx = spectral_derivative(g, h, 1);
  const Array loc = lp_project(g, lp_project_gtrsim(g, f, N) * hx, N);
  const double lhs =
      std::pow(static_cast<double>(N), s - 1.0) * sobolev_norm(g, loc, 0.0);
  const double rhs = sobolev_norm(g, f, s + 1.0) * sobolev_norm(g, h, s - 1.0);
  return rhs == 0.0 ? 0.0 : lhs / rhs;
}

double inverse_estimate_ratio(const TbOperator& op, const Array& f, double s,
                              double c0) {
  if (s < 0.0) {
    const DepthReport rep = validate_depth(op.grid, op.bath, 0.0, c0);
    if (!rep.smallness_ok)
      throw std::invalid_argument(
          "inverse_estimate_ratio: beta-smallness threshold violated for s < 0");
  }
  const double denom = sobolev_norm(op.grid, f, s);
  if (denom == 0.0) return 0.0;
  return sobolev_mu_norm(op.grid, solve_Tb(op, f), s, op.mu) / denom;
}

RatioReport sweep_commutator(const Grid& g, const Corpus& corpus,
                             const std::vector<long>& Ns) {
  RatioReport rep;
  rep.name = "cm1";
  for (int i = 0; i < corpus.size; ++i) {
    const Array f = corpus.sample(g, 2 * i);
    const Array gg = corpus.sample(g, 2 * i + 1);
    for (long N : Ns) rep.ratios.push_back(commutator_ratio(g, f, gg, N));
  }
  rep.finalize();
  return rep;
}

RatioReport sweep_product(const std::string& kind, const Grid& g,
                          const Corpus& corpus) {
  RatioReport rep;
  rep.name = kind;
  const std::vector<long> Ns{8, 32, 128};
  for (int i = 0; i < corpus.size; ++i) {
    const Array f = corpus.sample(g, 2 * i);
    const Array h = corpus.sample(g, 2 * i + 1);
    if (kind == "prod2") {
      rep.ratios.push_back(product_ratio_prod2(g, f, h, 0.5, 1.0, 1.0));
      rep.ratios.push_back(product_ratio_prod2(g, f, h, 0.0, 1.0, 0.6));
    } else if (kind == "prod3") {
      rep.ratios.push_back(product_ratio_prod3(g, f, h, 0.5));
      rep.ratios.push_back(product_ratio_prod3(g, f, h, 1.0));
    } else if (kind == "prod5") {
      for (double theta : {-1.0, -0.5, 0.5, 1.0})
        rep.ratios.push_back(product_ratio_prod5(g, f, h, theta));
    } else if (kind == "prod6") {
      for (double theta : {0.5, 1.0})
        for (long N : Ns)
          rep.ratios.push_back(product_ratio_prod6(g, f, h, theta, N));
    } else if (kind == "proN1") {
      for (double s : {0.5, 1.0})
        for (long N : Ns)
          rep.ratios.push_back(product_ratio_proN1(g, f, h, s, N));
    } else if (kind == "proN2") {
      for (long N : Ns)
        rep.ratios.push_back(product_ratio_proN2(g, f, h, 1.0, N));
    } else {
      throw std::invalid_argument("sweep_product: unknown kind '" + kind + "'");
    }
  }
  rep.finalize();
  return rep;
}

RatioReport sweep_inverse(const Grid& g, const Bathymetry& bath, double mu,
                          double s, const Corpus& corpus) {
  RatioReport rep;
  rep.name = "estT";
  const TbOperator op = TbOperator::assemble(g, bath, mu);
  for (int i = 0; i < corpus.size; ++i)
    rep.ratios.push_back(inverse_estimate_ratio(op, corpus.sample(g, i), s));
  rep.finalize();
  return rep;
}

}  // namespace bpw
