#include "bpw/dynamics.hpp"

#include "bpw/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace bpw {

void bp_rhs(const Grid& g, const State& s, const Bathymetry& bath, const Params& p,
            const TbOperator& op, Array& dzeta, Array& du) {
  // ((1-beta b)u)_x + eps (u zeta)_x, dealiased product by product.
  Array flux = s.u - bath.beta * quadratic_product(g, bath.b, s.u) +
               p.eps * quadratic_product(g, s.u, s.zeta);
  dzeta = helmholtz_solve(g, -spectral_derivative(g, flux, 1), p.nu);

  Array w = s.zeta + 0.5 * p.eps * quadratic_product(g, s.u, s.u);
  Array wx = spectral_derivative(g, w, 1);
  Array rhs2 = -(wx - bath.beta * quadratic_product(g, bath.b, wx));
  du = solve_Tb(op, rhs2);
}

void bpw_rhs(const Grid& g, const State& s, const Bathymetry& bath, const Params& p,
             Array& dzeta, Array& du) {
  Array hu = s.u + quadratic_product(g, s.u, p.eps * s.zeta - bath.beta * bath.b);
  dzeta = -spectral_derivative(g, hu, 1);

  Array w = s.zeta + 0.5 * p.eps * quadratic_product(g, s.u, s.u);
  du = -helmholtz_solve(g, spectral_derivative(g, w, 1), p.mu / 3.0);
}

State rk4_step(const State& s, const RhsFn& rhs, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be > 0");
  auto stage_ok = [](const Array& a, const Array& b) {
    return a.isFinite().all() && b.isFinite().all();
  };

  Array k1z, k1u, k2z, k2u, k3z, k3u, k4z, k4u;
  rhs(s, k1z, k1u);
  State mid;
  mid.t = s.t + 0.5 * dt;
  mid.zeta = s.zeta + 0.5 * dt * k1z;
  mid.u = s.u + 0.5 * dt * k1u;
  if (!stage_ok(mid.zeta, mid.u)) throw std::domain_error("rk4_step: non-finite stage 2");
  rhs(mid, k2z, k2u);
  mid.zeta = s.zeta + 0.5 * dt * k2z;
  mid.u = s.u + 0.5 * dt * k2u;
  if (!stage_ok(mid.zeta, mid.u)) throw std::domain_error("rk4_step: non-finite stage 3");
  rhs(mid, k3z, k3u);
  State end;
  end.t = s.t + dt;
  end.zeta = s.zeta + dt * k3z;
  end.u = s.u + dt * k3u;
  if (!stage_ok(end.zeta, end.u)) throw std::domain_error("rk4_step: non-finite stage 4");
  rhs(end, k4z, k4u);

  State out;
  out.t = s.t + dt;
  out.zeta = s.zeta + (dt / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
  out.u = s.u + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  if (!stage_ok(out.zeta, out.u)) throw std::domain_error("rk4_step: non-finite result");
  return out;
}

Trajectory simulate(const Grid& g, const State& initial, SystemKind kind,
                    const Bathymetry& bath, const Params& p, const SimOptions& opts) {
  p.validate();
  if (initial.zeta.size() != g.size || initial.u.size() != g.size)
    throw std::invalid_argument("simulate: grid mismatch");
  if (p.dt > 0.5 * g.dx)
    throw std::invalid_argument("simulate: CFL guard violated (dt > 0.5*dx)");
  const DepthReport depth = validate_depth(g, bath, p.h0, p.c0_threshold);
  if (!depth.pass)
    throw std::invalid_argument("simulate: depth validation failed (min h_b < h0)");
  if (opts.stride < 1) throw std::invalid_argument("simulate: stride must be >= 1");

  TbOperator op;
  if (kind == SystemKind::BP_regularized) op = TbOperator::assemble(g, bath, p.mu);

  RhsFn rhs;
  if (kind == SystemKind::BP_regularized)
    rhs = [&](const State& s, Array& dz, Array& du) { bp_rhs(g, s, bath, p, op, dz, du); };
  else
    rhs = [&](const State& s, Array& dz, Array& du) { bpw_rhs(g, s, bath, p, dz, du); };

  Trajectory traj;
  traj.dt = p.dt;
  traj.s_list = opts.s_list;
  traj.inq_rhs0 = entropy_inequality_rhs0(g, initial, bath, p);

  const auto n_steps = static_cast<Eigen::Index>(std::llround(p.t_end / p.dt));
  State cur = initial;
  cur.t = initial.t;

  for (Eigen::Index step = 0;; ++step) {
    const double min_h = positivity_check(g, cur, bath, p.eps);
    const bool finite = cur.zeta.isFinite().all() && cur.u.isFinite().all();
    if (!finite) {
      traj.abort = AbortKind::Blowup;
      traj.abort_time = cur.t;
      break;
    }
    if (min_h <= 0.0) {
      traj.abort = AbortKind::Positivity;
      traj.abort_time = cur.t;
      break;
    }

    DiagnosticsRecord rec = make_record(g, cur, bath, p, opts.s_list);
    rec.ineq_slack = traj.inq_rhs0 * std::exp(cur.t - initial.t) - rec.inq_lhs;
    if (!traj.records.empty())
      rec.balance_residual = entropy_balance_residual(traj.records.back(), rec);
    traj.times.push_back(cur.t);
    traj.records.push_back(rec);
    if (step % opts.stride == 0 || step == n_steps) {
      traj.states.push_back(cur);
      traj.state_steps.push_back(step);
    }

    if (step == n_steps) break;
    try {
      cur = rk4_step(cur, rhs, p.dt);
    } catch (const std::domain_error&) {
      traj.abort = AbortKind::Blowup;
      traj.abort_time = cur.t;
      break;
    }
  }
  return traj;
}

}  // namespace bpw
