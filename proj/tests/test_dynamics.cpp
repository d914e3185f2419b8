#include "bpw/dynamics.hpp"

#include <doctest.h>

#include <cmath>

using namespace bpw;

namespace {
State rest_state(const Grid& g) {
  State s;
  s.zeta = Array::Zero(g.size);
  s.u = Array::Zero(g.size);
  return s;
}
}  // namespace

TEST_CASE("bp rhs") {
  const Grid g = Grid::make(2.0 * M_PI, 64);
  const Bathymetry flat = Bathymetry::flat(g);
  Params p;
  p.nu = 0.0;
  const TbOperator op = TbOperator::assemble(g, flat, p.mu);

  SUBCASE("rest state") {
    Array dz, du;
    bp_rhs(g, rest_state(g), flat, p, op, dz, du);
    CHECK(dz.abs().maxCoeff() == 0.0);
    CHECK(du.abs().maxCoeff() <= 1e-14);
  }
  SUBCASE("flat-bottom eigenfunction") {
    State s = rest_state(g);
    s.zeta = g.x.sin();
    Array dz, du;
    bp_rhs(g, s, flat, p, op, dz, du);
    CHECK(dz.abs().maxCoeff() <= 1e-12);
    const Array expect = -g.x.cos() / (1.0 + p.mu / 3.0);
    CHECK((du - expect).abs().maxCoeff() <= 1e-12);
  }
  SUBCASE("recomposition oracle on a generic state") {
    const Grid gb = Grid::make(50.0, 128);
    const Bathymetry bath = Bathymetry::preset(gb, "gaussian-bump", 0.3, 0.5, 3.0);
    Params pb;
    pb.beta = 0.3;
    pb.nu = 0.01;
    const TbOperator opb = TbOperator::assemble(gb, bath, pb.mu);
    State s;
    s.zeta = (-((gb.x - 20.0) / 2.0).square()).exp();
    s.u = 0.5 * (-((gb.x - 30.0) / 3.0).square()).exp();
    Array dz, du;
    bp_rhs(gb, s, bath, pb, opb, dz, du);

    const Array flux = s.u - bath.beta * quadratic_product(gb, bath.b, s.u) +
                       pb.eps * quadratic_product(gb, s.u, s.zeta);
    const Array dz_expect =
        helmholtz_solve(gb, (-spectral_derivative(gb, flux, 1)).eval(), pb.nu);
    const Array w = s.zeta + 0.5 * pb.eps * quadratic_product(gb, s.u, s.u);
    const Array wx = spectral_derivative(gb, w, 1);
    const Array du_expect =
        solve_Tb(opb, (-(wx - bath.beta * quadratic_product(gb, bath.b, wx))).eval());
    CHECK((dz - dz_expect).abs().maxCoeff() <= 1e-12);
    CHECK((du - du_expect).abs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("bpw rhs") {
  const Grid g = Grid::make(2.0 * M_PI, 64);
  const Bathymetry flat = Bathymetry::flat(g);
  Params p;

  SUBCASE("rest state") {
    Array dz, du;
    bpw_rhs(g, rest_state(g), flat, p, dz, du);
    CHECK(dz.abs().maxCoeff() == 0.0);
    CHECK(du.abs().maxCoeff() == 0.0);
  }
  SUBCASE("recomposition oracle") {
    State s = rest_state(g);
    s.u = g.x.sin();
    Array dz, du;
    bpw_rhs(g, s, flat, p, dz, du);
    // dzeta = -(u + eps*Q(u, zeta))_x = -cos x here
    CHECK((dz + g.x.cos()).abs().maxCoeff() <= 1e-12);
    const Array w = 0.5 * p.eps * quadratic_product(g, s.u, s.u);
    const Array du_expect =
        -helmholtz_solve(g, spectral_derivative(g, w, 1), p.mu / 3.0);
    CHECK((du - du_expect).abs().maxCoeff() <= 1e-13);
  }
  SUBCASE("linear dispersion relation") {
    // tiny-amplitude plane wave: omega^2 = k^2/(1 + mu k^2/3)
    const Grid gl = Grid::make(2.0 * M_PI, 128);
    const double k = 3.0, amp = 1e-8;
    Params pl;
    pl.eps = 0.1;
    pl.mu = 0.3;
    const double omega = k / std::sqrt(1.0 + pl.mu * k * k / 3.0);
    const double period = 2.0 * M_PI / omega;
    pl.dt = period / 4000.0;
    pl.t_end = 2.0 * period;
    State s;
    s.zeta = amp * (k * gl.x).cos();
    // right-moving wave: u = omega/k * zeta at leading order
    s.u = (omega / k) * amp * (k * gl.x).cos();
    const Trajectory traj =
        simulate(gl, s, SystemKind::BPW, Bathymetry::flat(gl), pl, SimOptions{});
    REQUIRE_FALSE(traj.aborted());
    // after two full periods the profile should return to the initial one
    const Array final_zeta = traj.states.back().zeta;
    const double err = (final_zeta - s.zeta).abs().maxCoeff() / amp;
    CHECK(err <= 0.01 * 2.0 * 2.0 * M_PI);  // 1% phase error over 2 periods
  }
}

TEST_CASE("rk4 step") {
  const Grid g = Grid::make(50.0, 32);
  SUBCASE("zero vector field") {
    State s;
    s.zeta = g.x.sin();
    s.u = g.x.cos();
    auto rhs = [&](const State&, Array& dz, Array& du) {
      dz = Array::Zero(g.size);
      du = Array::Zero(g.size);
    };
    const State out = rk4_step(s, rhs, 0.1);
    CHECK((out.zeta - s.zeta).abs().maxCoeff() == 0.0);
    CHECK((out.u - s.u).abs().maxCoeff() == 0.0);
    CHECK(out.t == doctest::Approx(s.t + 0.1));
  }
  SUBCASE("scalar test equation order") {
    const double lambda = -0.7;
    auto rhs = [&](const State& s, Array& dz, Array& du) {
      dz = lambda * s.zeta;
      du = Array::Zero(g.size);
    };
    State s;
    s.zeta = Array::Ones(g.size);
    s.u = Array::Zero(g.size);
    const double dt = 0.1;
    const State out = rk4_step(s, rhs, dt);
    const double exact = std::exp(lambda * dt);
    // RK4 local error ~ dt^5 * lambda^5 / 120
    CHECK(std::abs(out.zeta[0] - exact) <= std::pow(std::abs(lambda) * dt, 5.0));
  }
  SUBCASE("non-finite stages rejected") {
    auto rhs = [&](const State& s, Array& dz, Array& du) {
      dz = (1.0 / s.zeta);  // blows up at zero
      du = Array::Zero(g.size);
    };
    State s;
    s.zeta = Array::Zero(g.size);
    s.u = Array::Zero(g.size);
    CHECK_THROWS_AS(rk4_step(s, rhs, 0.1), std::domain_error);
  }
}

TEST_CASE("simulate") {
  const Grid g = Grid::make(50.0, 64);
  const Bathymetry flat = Bathymetry::flat(g);
  Params p;
  p.dt = 0.01;
  p.t_end = 0.1;

  SUBCASE("rest trajectory is constant") {
    for (SystemKind kind : {SystemKind::BP_regularized, SystemKind::BPW}) {
      const Trajectory traj = simulate(g, rest_state(g), kind, flat, p, SimOptions{});
      REQUIRE_FALSE(traj.aborted());
      CHECK(traj.records.size() == 11);
      for (const auto& s : traj.states) {
        CHECK(s.zeta.abs().maxCoeff() <= 1e-14);
        CHECK(s.u.abs().maxCoeff() <= 1e-14);
      }
      // strictly increasing times
      for (std::size_t i = 1; i < traj.times.size(); ++i)
        CHECK(traj.times[i] > traj.times[i - 1]);
    }
  }
  SUBCASE("CFL guard") {
    Params bad = p;
    bad.dt = g.dx;  // > 0.5*dx
    CHECK_THROWS_AS(simulate(g, rest_state(g), SystemKind::BPW, flat, bad, SimOptions{}),
                    std::invalid_argument);
  }
  SUBCASE("positivity abort records, not throws") {
    State s = rest_state(g);
    s.zeta = Array::Constant(g.size, -1.0 / p.eps);  // h = 0 everywhere
    const Trajectory traj = simulate(g, s, SystemKind::BPW, flat, p, SimOptions{});
    CHECK(traj.abort == AbortKind::Positivity);
    CHECK(traj.abort_time == 0.0);
    CHECK(traj.records.empty());
  }
  SUBCASE("mass conservation") {
    State s = rest_state(g);
    s.zeta = (-((g.x - 25.0) / 2.0).square()).exp();
    const Trajectory traj = simulate(g, s, SystemKind::BPW, flat, p, SimOptions{});
    const double m0 = traj.states.front().zeta.sum() * g.dx;
    for (const auto& st : traj.states)
      CHECK(std::abs(st.zeta.sum() * g.dx - m0) <= 1e-10 * std::max(1.0, std::abs(m0)));
  }
  SUBCASE("time reversal") {
    State s = rest_state(g);
    s.zeta = (-((g.x - 25.0) / 3.0).square()).exp();
    const Bathymetry bath = flat;
    auto fwd = [&](const State& st, Array& dz, Array& du) {
      bpw_rhs(g, st, bath, p, dz, du);
    };
    auto bwd = [&](const State& st, Array& dz, Array& du) {
      bpw_rhs(g, st, bath, p, dz, du);
      dz = -dz;
      du = -du;
    };
    State cur = s;
    const int n = 10;
    for (int i = 0; i < n; ++i) cur = rk4_step(cur, fwd, p.dt);
    for (int i = 0; i < n; ++i) cur = rk4_step(cur, bwd, p.dt);
    const double tol = static_cast<double>(n) * std::pow(p.dt, 4.0);
    CHECK((cur.zeta - s.zeta).abs().maxCoeff() <= tol);
    CHECK((cur.u - s.u).abs().maxCoeff() <= tol);
  }
  SUBCASE("snapshot stride") {
    State s = rest_state(g);
    SimOptions opts;
    opts.stride = 4;
    const Trajectory traj = simulate(g, s, SystemKind::BPW, flat, p, opts);
    CHECK(traj.records.size() == 11);
    CHECK(traj.state_steps.front() == 0);
    CHECK(traj.state_steps.back() == 10);
  }
}
