// Physical parameters, bathymetry construction/validation, and solution state.
#pragma once

#include "bpw/grid.hpp"

#include <string>

namespace bpw {

/// Physical and numerical parameters of a run.
struct Params {
  double eps = 0.1;   // surface amplitude
  double mu = 0.1;    // shallowness
  double beta = 0.0;  // bottom amplitude
  double nu = 0.0;    // parabolic smoothing of the regularized system
  double h0 = 0.1;    // depth floor for h_b = 1 - beta*b
  double dt = 1e-3;
  double t_end = 1.0;
  double c0_threshold = 0.5;  // smallness threshold on beta*|b|_W-proxy

  void validate() const;  // throws std::invalid_argument on violation
};

/// Bottom profile with derived still-water depth h_b = 1 - beta*b.
struct Bathymetry {
  double beta = 0.0;
  Array b;
  Array h_b;
  Array b_x;  // spectral derivative of b

  static Bathymetry flat(const Grid& g);
  static Bathymetry from_field(const Grid& g, const Array& b, double beta);
  /// Presets: "flat", "gaussian-bump", "two-bumps", "ridge".
  static Bathymetry preset(const Grid& g, const std::string& name, double beta,
                           double amplitude, double width);

  /// Literal zeroth-order coefficient h_b + (beta*mu/2) d/dx(h_b^2 b_x)
  /// + beta^2*mu*b_x^2 (see elliptic for the operator's own coefficient).
  Array g_b(const Grid& g, double mu) const;

  bool is_flat() const { return beta == 0.0; }
};

/// Surface elevation and velocity at one time.
struct State {
  Array zeta;
  Array u;
  double t = 0.0;
};

/// Total water height h = 1 + eps*zeta - beta*b.
Array total_height(const Grid& g, const Array& zeta, const Bathymetry& bath, double eps);

struct DepthReport {
  bool pass = false;
  double min_hb = 0.0;
  double argmin_x = 0.0;  // location of the minimum (grid point)
  double h0 = 0.0;
  double smallness = 0.0;  // beta * max|Lambda^s b| proxy
  bool smallness_ok = false;
};

/// Checks min h_b >= h0 and reports the (hyp2)-style smallness ratio.
/// The W^{s,inf} proxy is the grid max of Lambda^s b with s = s_proxy.
DepthReport validate_depth(const Grid& g, const Bathymetry& bath, double h0,
                           double c0 = 0.5, double s_proxy = 2.0);

/// Minimum of the total height over the grid.
double positivity_check(const Grid& g, const State& state, const Bathymetry& bath,
                        double eps);

/// Grid max of |Lambda^s f| — the documented W^{s,inf} stand-in.
double wsinf_proxy(const Grid& g, const Array& f, double s);

}  // namespace bpw
