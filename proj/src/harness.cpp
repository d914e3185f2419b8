#include "bpw/harness.hpp"

#include "bpw/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace bpw {

namespace {
Array gaussian(const Grid& g, double amp, double center, double width) {
  return amp * (-((g.x - center) / width).square()).exp();
}

Array triangle(const Grid& g, double amp, double center, double width) {
  Array out(g.size);
  for (Eigen::Index i = 0; i < g.size; ++i)
    out[i] = amp * std::max(0.0, 1.0 - std::abs(g.x[i] - center) / width);
  return out;
}

std::vector<Scenario> build_registry() {
  std::vector<Scenario> list;
  auto zero = [](const Grid& g) { return Array::Zero(g.size).eval(); };

  Scenario rest;
  rest.name = "rest";
  rest.description = "flat bottom, zero data; trajectory constant in time";
  rest.zeta0 = zero;
  rest.u0 = zero;
  list.push_back(rest);

  Scenario fg;
  fg.name = "flat-gaussian";
  fg.description = "reference run: gaussian elevation over a flat bottom";
  fg.zeta0 = [](const Grid& g) { return gaussian(g, 1.0, g.length / 2.0, 2.0); };
  fg.u0 = zero;
  list.push_back(fg);

  Scenario bg = fg;
  bg.name = "bump-gaussian";
  bg.description = "gaussian elevation over a single gaussian bump";
  bg.bath_preset = "gaussian-bump";
  bg.bath_amplitude = 0.5;
  bg.bath_width = 3.0;
  bg.params.beta = 0.3;
  list.push_back(bg);

  Scenario tb = fg;
  tb.name = "two-bumps";
  tb.description = "gaussian elevation over two uneven bumps";
  tb.bath_preset = "two-bumps";
  tb.bath_amplitude = 0.5;
  tb.bath_width = 2.5;
  tb.params.beta = 0.3;
  list.push_back(tb);

  Scenario rg = fg;
  rg.name = "ridge";
  rg.description = "gaussian elevation over a smooth ridge";
  rg.bath_preset = "ridge";
  rg.bath_amplitude = 0.5;
  rg.bath_width = 4.0;
  rg.params.beta = 0.3;
  list.push_back(rg);

  Scenario vs;
  vs.name = "vacuum-start";
  vs.description = "depression touching zero height; positivity gate aborts";
  vs.zeta0 = [](const Grid& g) {
    return gaussian(g, -1.0 / 0.1, g.length / 2.0, 2.0);
  };
  vs.u0 = zero;
  list.push_back(vs);

  Scenario dim;
  dim.name = "dimple";
  dim.description = "near-vacuum dimple with a Lipschitz kink (rough data)";
  dim.L = 30.0;
  dim.M = 1024;
  dim.params.dt = 5e-4;
  dim.params.t_end = 0.5;
  dim.params.h0 = 0.05;
  dim.zeta0 = [](const Grid& g) {
    return triangle(g, -0.85 / 0.1, g.length / 2.0, 3.0);
  };
  dim.u0 = zero;
  list.push_back(dim);

  Scenario sp = dim;
  sp.name = "spike";
  sp.description = "tall thin spike with finite entropy mass (rough data)";
  sp.zeta0 = [](const Grid& g) { return triangle(g, 20.0, g.length / 2.0, 0.5); };
  list.push_back(sp);

  return list;
}
}  // namespace

const std::vector<Scenario>& scenario_registry() {
  static const std::vector<Scenario> registry = build_registry();
  return registry;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& sc : scenario_registry())
    if (sc.name == name) return sc;
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

Bathymetry scenario_bathymetry(const Scenario& sc, const Grid& g) {
  if (sc.bath_preset == "flat" || sc.params.beta == 0.0) return Bathymetry::flat(g);
  return Bathymetry::preset(g, sc.bath_preset, sc.params.beta, sc.bath_amplitude,
                            sc.bath_width);
}

State scenario_initial(const Scenario& sc, const Grid& g) {
  State s;
  s.zeta = sc.zeta0(g);
  s.u = sc.u0(g);
  s.t = 0.0;
  return s;
}

Array bona_smith_truncate(const Grid& g, const Array& f, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("bona_smith_truncate: n must be > 0");
  return fourier_multiplier_apply(
      g, f, [n](double xi) { return std::abs(xi) <= n ? 1.0 : 0.0; });
}

BonaSmithReport bona_smith_experiment(const Grid& g, const State& data,
                                      const Bathymetry& bath, const Params& p,
                                      double s, const std::vector<double>& n_list) {
  BonaSmithReport rep;
  rep.n_values = n_list;
  if (n_list.size() < 2)
    throw std::invalid_argument("bona_smith_experiment: need at least 2 entries");

  // Truncation growth bound on the supplied data, for r in {1, 2}.
  for (double r : {1.0, 2.0}) {
    double worst = 0.0;
    const double base_z = sobolev_norm(g, data.zeta, s);
    const double base_u = sobolev_norm(g, data.u, s);
    for (double n : n_list) {
      if (base_z > 0.0)
        worst = std::max(worst, sobolev_norm(g, bona_smith_truncate(g, data.zeta, n),
                                             s + r) /
                                    (std::pow(n, r) * base_z));
      if (base_u > 0.0)
        worst = std::max(worst, sobolev_norm(g, bona_smith_truncate(g, data.u, n),
                                             s + r) /
                                    (std::pow(n, r) * base_u));
    }
    rep.gd_ratios.push_back(worst);
  }

  double horizon = p.t_end;
  std::vector<Trajectory> runs;
  for (int attempt = 0; attempt < 8; ++attempt) {
    runs.clear();
    double earliest_abort = -1.0;
    for (double n : n_list) {
      Params pn = p;
      pn.nu = std::pow(n, -5.0);
      pn.t_end = horizon;
      State init;
      init.zeta = bona_smith_truncate(g, data.zeta, n);
      init.u = bona_smith_truncate(g, data.u, n);
      Trajectory traj =
          simulate(g, init, SystemKind::BP_regularized, bath, pn, SimOptions{});
      if (traj.aborted()) {
        const double t = std::max(traj.abort_time, 4.0 * p.dt);
        earliest_abort = earliest_abort < 0.0 ? t : std::min(earliest_abort, t);
      }
      runs.push_back(std::move(traj));
    }
    if (earliest_abort < 0.0) break;
    horizon = earliest_abort / 2.0;  // half the smallest stable horizon
    if (horizon < 4.0 * p.dt) {
      rep.failure = "no stable common horizon";
      return rep;
    }
    runs.clear();
  }
  if (runs.empty()) {
    rep.failure = "no stable common horizon";
    return rep;
  }
  rep.horizon = horizon;

  for (std::size_t j = 0; j + 1 < runs.size(); ++j) {
    const auto& a = runs[j];
    const auto& b = runs[j + 1];
    const std::size_t steps = std::min(a.states.size(), b.states.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
      const double dz = sobolev_norm(g, a.states[i].zeta - b.states[i].zeta, s - 1.0);
      const double du =
          sobolev_mu_norm(g, a.states[i].u - b.states[i].u, s - 1.0, p.mu);
      sup = std::max(sup, std::sqrt(dz * dz + du * du));
    }
    rep.diffs.push_back(sup);
  }

  // Least-squares slope of log(diff) against log(n).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<double>(rep.diffs.size());
  for (std::size_t j = 0; j < rep.diffs.size(); ++j) {
    const double x = std::log(n_list[j]);
    const double y = std::log(std::max(rep.diffs[j], 1e-300));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  rep.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.ok = true;
  return rep;
}

namespace {
double rho_raw(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (t * (1.0 - t)));
}

double rho_mass() {
  static const double mass = [] {
    const int Q = 1 << 14;
    double acc = 0.0;
    for (int q = 0; q < Q; ++q) acc += rho_raw((q + 0.5) / Q);
    return acc / Q;
  }();
  return mass;
}
}  // namespace

double mollifier_rho(double t) { return rho_raw(t) / rho_mass(); }

Array mollify(const Grid& g, const Array& f, int n) {
  if (n < 1) throw std::invalid_argument("mollify: n must be >= 1");
  require_finite(f, "mollify");
  const int Q = 256;
  // Midpoint weights on supp rho_n = [0, 1/n], normalized to sum exactly 1.
  std::vector<double> w(Q);
  double total = 0.0;
  for (int q = 0; q < Q; ++q) {
    w[q] = rho_raw((q + 0.5) / Q);
    total += w[q];
  }
  for (double& v : w) v /= total;

  const Eigen::Index M = g.size;
  Array out = Array::Zero(M);
  for (int q = 0; q < Q; ++q) {
    const double y = (q + 0.5) / (static_cast<double>(n) * Q);
    // Linear interpolation of f at x_i - y, as a convex pair of grid values.
    double pos = -y / g.dx;
    pos -= std::floor(pos / static_cast<double>(M)) * static_cast<double>(M);
    const auto j0 = static_cast<Eigen::Index>(std::floor(pos)) % M;
    const double frac = pos - std::floor(pos);
    for (Eigen::Index i = 0; i < M; ++i) {
      const Eigen::Index a = (i + j0) % M;
      const Eigen::Index b = (a + 1) % M;
      out[i] += w[q] * ((1.0 - frac) * f[a] + frac * f[b]);
    }
  }
  return out;
}

WeakLimitReport weak_limit_experiment(const Grid& g, const State& rough,
                                      const Bathymetry& bath, const Params& p,
                                      const std::vector<int>& n_list) {
  WeakLimitReport rep;
  rep.n_values = n_list;
  rep.orlicz_unmollified = orlicz_norm(g, rough.zeta, bath, p.eps);
  const double rhs0 = entropy_inequality_rhs0(g, rough, bath, p);

  // Five fixed smooth test functions for the moment report.
  std::vector<Array> tests;
  for (int j = 0; j < 5; ++j)
    tests.push_back(gaussian(g, 1.0, g.length * (j + 1) / 6.0, g.length / 12.0));

  std::vector<Trajectory> runs;
  double min_slack = std::numeric_limits<double>::infinity();
  bool jensen = true;
  for (int n : n_list) {
    State init;
    init.zeta = mollify(g, rough.zeta, n);
    init.u = mollify(g, rough.u, n);
    const Bathymetry bath_n =
        bath.is_flat() ? bath : Bathymetry::from_field(g, mollify(g, bath.b, n), bath.beta);

    const double orl = orlicz_norm(g, init.zeta, bath_n, p.eps);
    rep.orlicz_values.push_back(orl);
    jensen = jensen && (orl <= rep.orlicz_unmollified * (1.0 + 1e-12) + 1e-12);

    Trajectory traj = simulate(g, init, SystemKind::BPW, bath_n, p, SimOptions{});
    if (traj.aborted()) {
      rep.failure = "sub-run aborted at n = " + std::to_string(n);
      return rep;
    }
    for (const auto& rec : traj.records)
      min_slack = std::min(min_slack, rhs0 * std::exp(rec.t) - rec.inq_lhs);

    std::vector<double> mom;
    for (const auto& phi : tests)
      mom.push_back(inner_product(g, traj.states.back().zeta, phi));
    rep.moments.push_back(mom);
    runs.push_back(std::move(traj));
  }

  for (std::size_t j = 0; j + 1 < runs.size(); ++j) {
    const std::size_t steps = std::min(runs[j].states.size(), runs[j + 1].states.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < steps; ++i)
      sup = std::max(sup, sobolev_norm(g, runs[j].states[i].u - runs[j + 1].states[i].u,
                                       0.0));
    rep.pairwise_u_distance.push_back(sup);
  }

  rep.min_inq2_slack = min_slack;
  rep.inq2_ok = min_slack >= 0.0;
  rep.jensen_ok = jensen;
  rep.ok = rep.inq2_ok && rep.jensen_ok;
  return rep;
}

}  // namespace bpw
