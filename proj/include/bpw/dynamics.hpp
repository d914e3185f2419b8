// Right-hand sides of the two systems, RK4 stepping, and simulation
// orchestration with positivity/blowup aborts.
#pragma once

#include "bpw/elliptic.hpp"
#include "bpw/fields.hpp"
#include "bpw/grid.hpp"

#include <functional>
#include <vector>

namespace bpw {

enum class SystemKind {
  BP_regularized,  // full system with bathymetry; nu >= 0 smoothing (nu = 0 is the plain system)
  BPW              // small-bottom-variation simplification
};

enum class AbortKind { None, Positivity, Blowup };

/// Per-step scalar diagnostics (serialized to diagnostics.csv).
struct DiagnosticsRecord {
  double t = 0.0;
  std::vector<double> energy;  // E^s for each configured s
  double entropy_H = 0.0;
  double orlicz = 0.0;
  double min_h = 0.0;
  double balance_residual = 0.0;
  double ineq_slack = 0.0;
  double sup_zeta = 0.0;
  double sup_u = 0.0;
  double sup_ux = 0.0;
  // Internal quantities used by the balance/inequality checks.
  double flux_integral = 0.0;   // (beta/eps) * integral of b_x u
  double inq_lhs = 0.0;         // (1/2)|u|_{H1mu}^2 + (1/eps^2) int sigma0(h)
  double inq_lhs_unhalved = 0.0;
};

struct Trajectory {
  std::vector<double> times;                 // every step
  std::vector<DiagnosticsRecord> records;    // every step
  std::vector<State> states;                 // every `stride` steps + final
  std::vector<Eigen::Index> state_steps;     // step index of each stored state
  AbortKind abort = AbortKind::None;
  double abort_time = 0.0;
  double dt = 0.0;
  double inq_rhs0 = 0.0;  // Z0 in the entropy-inequality right side Z0*e^t
  std::vector<double> s_list;

  bool aborted() const { return abort != AbortKind::None; }
};

struct SimOptions {
  Eigen::Index stride = 1;           // state snapshot stride (in steps)
  std::vector<double> s_list = {1.0};
};

using RhsFn = std::function<void(const State&, Array&, Array&)>;

/// Vector field of the regularized system:
///   dzeta/dt = (1 - nu d^2)^{-1} [ -((1-beta b)u)_x - eps (u zeta)_x ]
///   du/dt    = T_b^{-1} [ -h_b d/dx (zeta + (eps/2) u^2) ]
/// Quadratic products are dealiased by the 2/3 rule.
void bp_rhs(const Grid& g, const State& s, const Bathymetry& bath, const Params& p,
            const TbOperator& op, Array& dzeta, Array& du);

/// Vector field of the simplified system:
///   dzeta/dt = -d/dx (h u),  du/dt = -(1-(mu/3)d^2)^{-1} d/dx (zeta + eps u^2/2).
void bpw_rhs(const Grid& g, const State& s, const Bathymetry& bath, const Params& p,
             Array& dzeta, Array& du);

/// Classical 4-stage explicit Runge-Kutta step. Throws std::domain_error on
/// non-finite stage values.
State rk4_step(const State& s, const RhsFn& rhs, double dt);

/// Integrates to t_end (or aborts), recording diagnostics every step and
/// state snapshots at the configured stride. Enforces the CFL-style guard
/// dt <= 0.5*dx at configuration time (throws std::invalid_argument).
Trajectory simulate(const Grid& g, const State& initial, SystemKind kind,
                    const Bathymetry& bath, const Params& p,
                    const SimOptions& opts = {});

}  // namespace bpw
