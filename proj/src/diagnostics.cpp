#include "bpw/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bpw {

double sigma0(double x) {
  if (x < 0.0 || !std::isfinite(x)) throw std::domain_error("sigma0: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::abs(x - 1.0) < 0.5) {
    const double y = x - 1.0;  // log1p form avoids cancellation near the minimum
    return (1.0 + y) * std::log1p(y) - y;
  }
  return x * std::log(x) - x + 1.0;
}

double entropy_flux(double h, double u, double eps) {
  if (h < 0.0) throw std::domain_error("entropy_flux: h must be >= 0");
  const double alpha = (h == 0.0) ? 0.0 : h * std::log(h);
  return alpha * u / eps + eps * u * u * u / 3.0;
}

double compatibility_residual(double h, double u, double eps) {
  if (!(h > 0.0)) throw std::domain_error("compatibility_residual: h must be > 0");
  const double lnh = std::log(h);
  // grad(eta) = (ln h / eps^2, u); Jacobian of f = [[eps u, eps h], [1/eps, eps u]].
  const double c1 = (lnh / (eps * eps)) * (eps * u) + u / eps;
  const double c2 = (lnh / (eps * eps)) * (eps * h) + u * (eps * u);
  const double qh = (lnh + 1.0) * u / eps;
  const double qu = h * lnh / eps + eps * u * u;
  return std::max(std::abs(c1 - qh), std::abs(c2 - qu));
}

double entropy_total(const Grid& g, const State& s, const Bathymetry& bath,
                     const Params& p) {
  const Array h = total_height(g, s.zeta, bath, p.eps);
  if (h.minCoeff() < 0.0) throw std::domain_error("entropy_total: negative height");
  const Array ux = spectral_derivative(g, s.u, 1);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < g.size; ++i)
    acc += 0.5 * s.u[i] * s.u[i] + sigma0(h[i]) / (p.eps * p.eps) +
           (p.mu / 6.0) * ux[i] * ux[i];
  return acc * g.dx;
}

double orlicz_norm(const Grid& g, const Array& zeta, const Bathymetry& bath,
                   double eps) {
  const Array h = total_height(g, zeta, bath, eps);
  if (h.minCoeff() < 0.0) throw std::domain_error("orlicz_norm: negative height");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < g.size; ++i) acc += sigma0(h[i]);
  return acc * g.dx;
}

double energy_Es(const Grid& g, const State& s, double sobolev_s, double mu, double nu) {
  const double z = sobolev_norm(g, s.zeta, sobolev_s);
  double e = z * z;
  if (nu > 0.0) {
    const double zx = sobolev_norm(g, spectral_derivative(g, s.zeta, 1), sobolev_s);
    e += nu * zx * zx;
  }
  const double um = sobolev_mu_norm(g, s.u, sobolev_s, mu);
  return e + um * um;
}

double entropy_balance_residual(const DiagnosticsRecord& prev,
                                const DiagnosticsRecord& cur) {
  const double dt = cur.t - prev.t;
  const double r = (cur.entropy_H - prev.entropy_H) / dt +
                   0.5 * (prev.flux_integral + cur.flux_integral);
  return std::abs(r) / std::max(1.0, prev.entropy_H);
}

double entropy_inequality_rhs0(const Grid& g, const State& initial,
                               const Bathymetry& bath, const Params& p) {
  const double umu = sobolev_mu_norm(g, initial.u, 0.0, p.mu);
  const double orl = orlicz_norm(g, initial.zeta, bath, p.eps);
  double z0 = umu * umu + orl / (p.eps * p.eps);
  if (!bath.is_flat()) {
    const double bx = sobolev_norm(g, bath.b_x, 0.0);
    const double c = bath.beta / (2.0 * p.eps);
    z0 += c * c * bx * bx;
  }
  return z0;
}

double entropy_inequality_check(const Trajectory& traj) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& rec : traj.records) worst = std::min(worst, rec.ineq_slack);
  return worst;
}

DiagnosticsRecord make_record(const Grid& g, const State& s, const Bathymetry& bath,
                              const Params& p, const std::vector<double>& s_list) {
  DiagnosticsRecord rec;
  rec.t = s.t;
  for (double sv : s_list) rec.energy.push_back(energy_Es(g, s, sv, p.mu, p.nu));
  rec.entropy_H = entropy_total(g, s, bath, p);
  rec.orlicz = orlicz_norm(g, s.zeta, bath, p.eps);
  rec.min_h = positivity_check(g, s, bath, p.eps);
  rec.sup_zeta = s.zeta.abs().maxCoeff();
  rec.sup_u = s.u.abs().maxCoeff();
  const Array ux = spectral_derivative(g, s.u, 1);
  rec.sup_ux = ux.abs().maxCoeff();
  rec.flux_integral =
      bath.is_flat() ? 0.0 : (bath.beta / p.eps) * inner_product(g, bath.b_x, s.u);
  const double umu = sobolev_mu_norm(g, s.u, 0.0, p.mu);
  const double sig = orlicz_norm(g, s.zeta, bath, p.eps) / (p.eps * p.eps);
  rec.inq_lhs = 0.5 * umu * umu + sig;
  rec.inq_lhs_unhalved = umu * umu + sig;
  return rec;
}

namespace {
void require_dense_states(const Trajectory& traj, const char* what) {
  if (traj.states.size() != traj.times.size())
    throw std::invalid_argument(std::string(what) + ": trajectory must store every step");
}
}  // namespace

double ux_reconstruction_check(const Grid& g, const Trajectory& traj,
                               const Bathymetry& bath, const Params& p) {
  require_dense_states(traj, "ux_reconstruction_check");
  if (traj.states.size() < 2) return 0.0;
  const double mu = p.mu, eps = p.eps, beta = bath.beta;

  // u_tx = (3/mu) zeta + (3 eps/mu) u^2/2
  //        - K_mu * [ (3/mu)(zeta - (beta/eps) b) + (3 eps/mu) u^2/2 + (3 beta/(mu eps)) b ]
  auto rhs_term = [&](const State& s) -> Array {
    const Array usq = quadratic_product(g, s.u, s.u);
    Array local = (3.0 / mu) * s.zeta + (1.5 * eps / mu) * usq;
    Array conv_arg = (3.0 / mu) * (s.zeta - (beta / eps) * bath.b) +
                     (1.5 * eps / mu) * usq + (3.0 * beta / (mu * eps)) * bath.b;
    return local - helmholtz_solve(g, conv_arg, mu / 3.0);
  };

  const Array u0x = spectral_derivative(g, traj.states.front().u, 1);
  Array acc = Array::Zero(g.size);
  Array r_prev = rhs_term(traj.states.front());
  double max_dev = 0.0;
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const double dt = traj.times[i] - traj.times[i - 1];
    const Array r_cur = rhs_term(traj.states[i]);
    acc += 0.5 * dt * (r_prev + r_cur);
    const Array ux = spectral_derivative(g, traj.states[i].u, 1);
    max_dev = std::max(max_dev, (ux - (u0x + acc)).abs().maxCoeff());
    r_prev = r_cur;
  }
  return max_dev;
}

double cubic_interp_periodic(const Grid& g, const Array& f, double y) {
  double yw = std::fmod(y, g.length);
  if (yw < 0.0) yw += g.length;
  const double pos = yw / g.dx;
  auto i0 = static_cast<Eigen::Index>(std::floor(pos));
  if (i0 >= g.size) i0 = g.size - 1;
  const double t = pos - static_cast<double>(i0);
  const Eigen::Index M = g.size;
  auto at = [&](Eigen::Index i) { return f[((i % M) + M) % M]; };
  const double w_m1 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w_0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w_1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w_2 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return w_m1 * at(i0 - 1) + w_0 * at(i0) + w_1 * at(i0 + 1) + w_2 * at(i0 + 2);
}

FlowResult characteristic_flow(const Grid& g, const Trajectory& traj,
                               const Bathymetry& bath, const Params& p, double x0) {
  require_dense_states(traj, "characteristic_flow");
  const std::size_t n = traj.states.size();
  FlowResult res;
  if (n == 0) return res;

  const Array h0 = total_height(g, traj.states.front().zeta, bath, p.eps);
  const double h0_at_x0 = cubic_interp_periodic(g, h0, x0);

  double sup_ux = 0.0;
  for (const auto& rec : traj.records) sup_ux = std::max(sup_ux, rec.sup_ux);
  const double T = traj.times.back() - traj.times.front();
  res.fin3_bound = std::exp(-p.eps * T * sup_ux) * h0.minCoeff();

  res.q.reserve(n);
  double q = x0;  // unwrapped coordinate
  res.q.push_back(q);
  res.min_h_on_path = h0_at_x0;

  Array ux_cur = spectral_derivative(g, traj.states.front().u, 1);
  double integral_ux = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dt = traj.times[i + 1] - traj.times[i];
    const Array& ua = traj.states[i].u;
    const Array& ub = traj.states[i + 1].u;
    auto vel = [&](double tau, double y) {
      return p.eps * ((1.0 - tau) * cubic_interp_periodic(g, ua, y) +
                      tau * cubic_interp_periodic(g, ub, y));
    };
    const double k1 = vel(0.0, q);
    const double k2 = vel(0.5, q + 0.5 * dt * k1);
    const double k3 = vel(0.5, q + 0.5 * dt * k2);
    const double k4 = vel(1.0, q + dt * k3);
    const double qn = q + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const Array ux_next = spectral_derivative(g, ub, 1);
    integral_ux += 0.5 * dt * (cubic_interp_periodic(g, ux_cur, q) +
                               cubic_interp_periodic(g, ux_next, qn));
    q = qn;
    res.q.push_back(q);
    ux_cur = ux_next;

    const Array h = total_height(g, traj.states[i + 1].zeta, bath, p.eps);
    const double h_at_q = cubic_interp_periodic(g, h, q);
    res.min_h_on_path = std::min(res.min_h_on_path, h_at_q);
    res.residual = std::max(
        res.residual, std::abs(h_at_q - h0_at_x0 * std::exp(-p.eps * integral_ux)));
  }
  res.wrap_count = static_cast<int>(std::floor(std::abs(q - x0) / g.length));
  return res;
}

}  // namespace bpw
