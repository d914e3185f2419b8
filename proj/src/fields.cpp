#include "bpw/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace bpw {

void Params::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(eps)) throw std::invalid_argument("Params: eps must be > 0");
  if (!positive(mu)) throw std::invalid_argument("Params: mu must be > 0");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("Params: beta must be >= 0");
  if (!(nu >= 0.0) || !std::isfinite(nu))
    throw std::invalid_argument("Params: nu must be >= 0");
  if (!positive(h0)) throw std::invalid_argument("Params: h0 must be > 0");
  if (!positive(dt)) throw std::invalid_argument("Params: dt must be > 0");
  if (!positive(t_end)) throw std::invalid_argument("Params: t_end must be > 0");
  if (!(dt < t_end)) throw std::invalid_argument("Params: dt must be < t_end");
}

Bathymetry Bathymetry::flat(const Grid& g) {
  return from_field(g, Array::Zero(g.size), 0.0);
}

Bathymetry Bathymetry::from_field(const Grid& g, const Array& b, double beta) {
  if (b.size() != g.size) throw std::invalid_argument("Bathymetry: grid mismatch");
  require_finite(b, "Bathymetry");
  if (!(beta >= 0.0)) throw std::invalid_argument("Bathymetry: beta must be >= 0");
  Bathymetry bath;
  bath.beta = beta;
  bath.b = b;
  bath.h_b = 1.0 - beta * b;
  bath.b_x = (beta == 0.0) ? Array::Zero(g.size).eval() : spectral_derivative(g, b, 1);
  return bath;
}

Bathymetry Bathymetry::preset(const Grid& g, const std::string& name, double beta,
                              double amplitude, double width) {
  if (name == "flat") return flat(g);
  if (!(width > 0.0)) throw std::invalid_argument("Bathymetry: width must be > 0");
  const double c = g.length / 2.0;
  Array b(g.size);
  if (name == "gaussian-bump") {
    b = amplitude * (-((g.x - c) / width).square()).exp();
  } else if (name == "two-bumps") {
    const double c1 = 3.0 * g.length / 8.0;
    const double c2 = 5.0 * g.length / 8.0;
    b = amplitude * ((-((g.x - c1) / width).square()).exp() +
                     0.8 * (-((g.x - c2) / (1.3 * width)).square()).exp());
  } else if (name == "ridge") {
    const double steep = width / 4.0;
    b = amplitude * 0.5 *
        (((g.x - c + width) / steep).tanh() - ((g.x - c - width) / steep).tanh());
  } else {
    throw std::invalid_argument("Bathymetry: unknown preset '" + name + "'");
  }
  return from_field(g, b, beta);
}

Array Bathymetry::g_b(const Grid& g, double mu) const {
  if (!(mu > 0.0)) throw std::invalid_argument("g_b: mu must be > 0");
  Array flux = h_b.square() * b_x;
  return h_b + (beta * mu / 2.0) * spectral_derivative(g, flux, 1) +
         (beta * beta * mu) * b_x.square();
}

Array total_height(const Grid& g, const Array& zeta, const Bathymetry& bath, double eps) {
  if (zeta.size() != g.size || bath.b.size() != g.size)
    throw std::invalid_argument("total_height: grid mismatch");
  return 1.0 + eps * zeta - bath.beta * bath.b;
}

double wsinf_proxy(const Grid& g, const Array& f, double s) {
  Array lam = fourier_multiplier_apply(
      g, f, [s](double xi) { return std::pow(1.0 + xi * xi, s / 2.0); });
  return lam.abs().maxCoeff();
}

DepthReport validate_depth(const Grid& g, const Bathymetry& bath, double h0,
                           double c0, double s_proxy) {
  DepthReport rep;
  rep.h0 = h0;
  Eigen::Index argmin = 0;
  rep.min_hb = bath.h_b.minCoeff(&argmin);
  rep.argmin_x = g.x[argmin];
  rep.pass = rep.min_hb >= h0;
  rep.smallness = bath.is_flat() ? 0.0 : bath.beta * wsinf_proxy(g, bath.b, s_proxy);
  rep.smallness_ok = rep.smallness <= c0;
  return rep;
}

double positivity_check(const Grid& g, const State& state, const Bathymetry& bath,
                        double eps) {
  return total_height(g, state.zeta, bath, eps).minCoeff();
}

}  // namespace bpw
