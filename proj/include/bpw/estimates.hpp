// Empirical bounded-ratio verification of the harmonic-analysis estimates:
// commutator, Sobolev product, frequency-localized product, and the inverse
// bound for the dispersive operator.
#pragma once

#include "bpw/elliptic.hpp"
#include "bpw/fields.hpp"
#include "bpw/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bpw {

/// Reproducible generator of random band-limited fields with a prescribed
/// Sobolev-type spectral decay |f_hat(xi)| ~ (1+xi^2)^{-decay/2}.
struct Corpus {
  std::uint64_t seed = 1;
  int size = 200;
  double decay = 2.0;
  double cutoff = 64.0;  // max |xi| with nonzero content

  Array sample(const Grid& g, int index) const;
};

struct RatioReport {
  std::string name;
  std::vector<double> ratios;
  double max = 0.0;
  double mean = 0.0;
  double p95 = 0.0;

  void finalize();
};

/// Aggregate projectors (cutoff conventions fixed here once and for all):
/// P_{<<N} = sum_{K <= N/8} P_K, P_{>~N} = sum_{K >= N/4} P_K,
/// P~_N = sum_{N/4 <= K <= 4N} P_K.
Array lp_project_lessless(const Grid& g, const Array& f, long N);
Array lp_project_gtrsim(const Grid& g, const Array& f, long N);
Array lp_project_tilde(const Grid& g, const Array& f, long N);

/// |[P_N, P_{<<N} f] g_x|_2 / (|f_x|_inf |P~_N g|_2). Requires N >= 8.
/// Returns 0 when both sides vanish; throws if only the denominator does.
double commutator_ratio(const Grid& g, const Array& f, const Array& gg, long N);

// Per-estimate ratios (LHS/RHS). W^{s,inf} norms use the grid-max proxy of
// Lambda^s, and every "+" exponent is fixed to +0.1.
double product_ratio_prod2(const Grid& g, const Array& f, const Array& h,
                           double t, double p, double r);  // r+p > t+1/2 > 0, r,p >= t
double product_ratio_prod3(const Grid& g, const Array& f, const Array& h,
                           double s);                      // s >= 0
double product_ratio_prod5(const Grid& g, const Array& f, const Array& h,
                           double theta);
double product_ratio_prod6(const Grid& g, const Array& f, const Array& h,
                           double theta, long N);          // N >= 1
double product_ratio_proN1(const Grid& g, const Array& f, const Array& h,
                           double s, long N);              // s > 0, N >= 8
double product_ratio_proN2(const Grid& g, const Array& f, const Array& h,
                           double s, long N);              // s > 1/2, N >= 8

/// sobolev_mu_norm(solve(f), s, mu) / sobolev_norm(f, s).
/// For s < 0 the beta-smallness threshold is enforced first.
double inverse_estimate_ratio(const TbOperator& op, const Array& f, double s,
                              double c0 = 0.5);

// Corpus sweeps (deterministic; used both by tests and the CLI reports).
RatioReport sweep_commutator(const Grid& g, const Corpus& corpus,
                             const std::vector<long>& Ns);
RatioReport sweep_product(const std::string& kind, const Grid& g,
                          const Corpus& corpus);
RatioReport sweep_inverse(const Grid& g, const Bathymetry& bath, double mu,
                          double s, const Corpus& corpus);

}  // namespace bpw
