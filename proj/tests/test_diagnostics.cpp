#include "bpw/diagnostics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bpw;

TEST_CASE("sigma0") {
  CHECK(sigma0(1.0) == 0.0);
  CHECK(sigma0(0.0) == 1.0);
  CHECK(sigma0(2.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));
  CHECK_THROWS_AS(sigma0(-0.1), std::domain_error);

  SUBCASE("convexity on random triples") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ux(0.0, 5.0), ua(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double x = ux(rng), y = ux(rng), a = ua(rng);
      CHECK(sigma0(a * x + (1.0 - a) * y) <=
            a * sigma0(x) + (1.0 - a) * sigma0(y) + 1e-14);
    }
  }
  SUBCASE("two-sided quadratic bounds below M = 2, linear above") {
    const double c1 = 0.3, c2 = 0.6;
    for (double x = -1.0; x < 2.0; x += 1e-3) {
      const double v = sigma0(1.0 + x);
      if (x != 0.0) {
        CHECK(v >= c1 * x * x);
        CHECK(v <= x * x / c1);
      }
    }
    for (double x = 2.0; x <= 50.0; x += 0.05) CHECK(sigma0(1.0 + x) >= c2 * x);
  }
}

TEST_CASE("entropy flux and compatibility") {
  const double eps = 0.1;
  CHECK(entropy_flux(1.0, 0.0, eps) == 0.0);
  CHECK(entropy_flux(1.0, 2.0, eps) == doctest::Approx(eps * 8.0 / 3.0).epsilon(1e-14));
  const double e = std::exp(1.0);
  CHECK(entropy_flux(e, 1.0, eps) == doctest::Approx(e / eps + eps / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(entropy_flux(-1.0, 0.0, eps), std::domain_error);

  SUBCASE("compatibility residual vanishes on a 20x20 grid") {
    CHECK(compatibility_residual(1.0, 0.0, eps) == 0.0);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double h = 0.2 + (3.0 - 0.2) * i / 19.0;
        const double u = -2.0 + 4.0 * j / 19.0;
        CHECK(compatibility_residual(h, u, eps) <= 1e-12);
      }
  }
}

TEST_CASE("entropy total and orlicz") {
  const Grid g = Grid::make(2.0 * M_PI, 64);
  const Bathymetry flat = Bathymetry::flat(g);
  Params p;

  SUBCASE("rest state has zero entropy") {
    State s;
    s.zeta = Array::Zero(g.size);
    s.u = Array::Zero(g.size);
    CHECK(entropy_total(g, s, flat, p) == 0.0);
    CHECK(orlicz_norm(g, s.zeta, flat, p.eps) == 0.0);
  }
  SUBCASE("analytic value for a sine velocity") {
    State s;
    s.zeta = Array::Zero(g.size);
    s.u = g.x.sin();
    CHECK(entropy_total(g, s, flat, p) ==
          doctest::Approx(M_PI / 2.0 + p.mu * M_PI / 6.0).epsilon(1e-12));
  }
  SUBCASE("quadrature oracle") {
    State s;
    s.zeta = 0.5 * (2.0 * g.x).cos();
    s.u = 0.3 * g.x.sin();
    const Array h = total_height(g, s.zeta, flat, p.eps);
    const Array ux = spectral_derivative(g, s.u, 1);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < g.size; ++i)
      acc += 0.5 * s.u[i] * s.u[i] + sigma0(h[i]) / (p.eps * p.eps) +
             (p.mu / 6.0) * ux[i] * ux[i];
    CHECK(entropy_total(g, s, flat, p) == doctest::Approx(acc * g.dx).epsilon(1e-10));
  }
  SUBCASE("orlicz Taylor expansion for small data") {
    const Array zeta = 0.4 * g.x.sin();  // |eps*zeta|_inf = 0.04
    const double val = orlicz_norm(g, zeta, flat, p.eps);
    const double taylor = 0.5 * p.eps * p.eps * g.dx * zeta.square().sum();
    CHECK(std::abs(val - taylor) <= 0.1 * taylor);
  }
  SUBCASE("orlicz dominated by the quadratic functional") {
    // (boundd)-style bound with an empirical constant; C = 1 suffices for
    // admissible data since sigma0(1+x) <= x^2/0.3 and eps^2 zeta^2 + ... covers it
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
      Array zeta(g.size);
      for (Eigen::Index i = 0; i < g.size; ++i) zeta[i] = gauss(rng);
      zeta *= 0.8 / zeta.abs().maxCoeff() / 0.1;  // keep h within (0.2, 1.8)
      const double val = orlicz_norm(g, zeta, flat, 0.1);
      const double quad = g.dx * (0.1 * 0.1 * zeta.square()).sum();
      CHECK(val <= (1.0 / 0.3) * quad);
    }
  }
  SUBCASE("negative height rejected") {
    State s;
    s.zeta = Array::Constant(g.size, -20.0);
    s.u = Array::Zero(g.size);
    CHECK_THROWS_AS(entropy_total(g, s, flat, p), std::domain_error);
  }
}

TEST_CASE("energy functional") {
  const Grid g = Grid::make(2.0 * M_PI, 64);
  State s;
  s.zeta = Array::Zero(g.size);
  s.u = Array::Zero(g.size);
  CHECK(energy_Es(g, s, 0.0, 0.1, 0.0) == 0.0);

  s.zeta = g.x.sin();
  CHECK(energy_Es(g, s, 1.5, 0.1, 0.0) ==
        doctest::Approx(std::pow(sobolev_norm(g, s.zeta, 1.5), 2.0)).epsilon(1e-12));

  s.u = g.x.sin();
  // s = 0, mu = 3, nu = 1: pi + pi + (pi + 3pi) = 6pi
  CHECK(energy_Es(g, s, 0.0, 3.0, 1.0) == doctest::Approx(6.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("trajectory-level identities") {
  const Grid g = Grid::make(50.0, 128);
  const Bathymetry flat = Bathymetry::flat(g);
  Params p;
  p.dt = 0.01;
  p.t_end = 0.2;

  SUBCASE("rest trajectory: all residuals zero") {
    State s;
    s.zeta = Array::Zero(g.size);
    s.u = Array::Zero(g.size);
    const Trajectory traj = simulate(g, s, SystemKind::BPW, flat, p, SimOptions{});
    CHECK(ux_reconstruction_check(g, traj, flat, p) <= 1e-14);
    for (const auto& rec : traj.records) {
      CHECK(rec.balance_residual == 0.0);
      CHECK(rec.ineq_slack == doctest::Approx(0.0).epsilon(1e-14));
    }
    CHECK(entropy_inequality_check(traj) == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("bathymetry balance residual converges at order >= 2") {
    const Bathymetry bath = Bathymetry::preset(g, "gaussian-bump", 0.3, 0.5, 3.0);
    State s;
    s.zeta = (-((g.x - 25.0) / 2.0).square()).exp();
    s.u = Array::Zero(g.size);
    auto max_balance = [&](double dt) {
      Params q = p;
      q.beta = 0.3;
      q.dt = dt;
      const Trajectory traj = simulate(g, s, SystemKind::BPW, bath, q, SimOptions{});
      double worst = 0.0;
      for (std::size_t i = 1; i < traj.records.size(); ++i)
        worst = std::max(worst, traj.records[i].balance_residual);
      return worst;
    };
    const double r1 = max_balance(0.02), r2 = max_balance(0.01);
    CHECK(r1 <= 1e-5);
    CHECK(std::log2(r1 / r2) >= 1.9);
  }
  SUBCASE("ux reconstruction converges at order >= 2 with bathymetry") {
    const Bathymetry bath = Bathymetry::preset(g, "gaussian-bump", 0.3, 0.5, 3.0);
    State s;
    s.zeta = (-((g.x - 25.0) / 2.0).square()).exp();
    s.u = Array::Zero(g.size);
    auto dev = [&](double dt) {
      Params q = p;
      q.beta = 0.3;
      q.dt = dt;
      const Trajectory traj = simulate(g, s, SystemKind::BPW, bath, q, SimOptions{});
      return ux_reconstruction_check(g, traj, bath, q);
    };
    const double d1 = dev(0.02), d2 = dev(0.01);
    CHECK(std::log2(d1 / d2) >= 1.9);
  }
  SUBCASE("stride > 1 trajectories are rejected") {
    State s;
    s.zeta = Array::Zero(g.size);
    s.u = Array::Zero(g.size);
    SimOptions opts;
    opts.stride = 2;
    const Trajectory traj = simulate(g, s, SystemKind::BPW, flat, p, opts);
    CHECK_THROWS_AS(ux_reconstruction_check(g, traj, flat, p), std::invalid_argument);
    CHECK_THROWS_AS(characteristic_flow(g, traj, flat, p, 0.0), std::invalid_argument);
  }
}

TEST_CASE("characteristic flow") {
  const Grid g = Grid::make(50.0, 128);
  const Bathymetry flat = Bathymetry::flat(g);
  Params p;
  p.dt = 0.01;
  p.t_end = 0.5;

  SUBCASE("constant velocity advects linearly") {
    const double c = 2.0;
    Trajectory traj;
    traj.dt = p.dt;
    for (int i = 0; i <= 50; ++i) {
      State s;
      s.t = i * p.dt;
      s.zeta = Array::Zero(g.size);
      s.u = Array::Constant(g.size, c);
      traj.times.push_back(s.t);
      traj.states.push_back(s);
      traj.records.push_back(make_record(g, s, flat, p, {1.0}));
    }
    const double x0 = g.x[10];
    const FlowResult res = characteristic_flow(g, traj, flat, p, x0);
    CHECK(res.q.back() == doctest::Approx(x0 + p.eps * c * 0.5).epsilon(1e-12));
    CHECK(res.residual <= 1e-12);
    CHECK(res.min_h_on_path == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("rest state stays put") {
    State s;
    s.zeta = Array::Zero(g.size);
    s.u = Array::Zero(g.size);
    const Trajectory traj = simulate(g, s, SystemKind::BPW, flat, p, SimOptions{});
    const FlowResult res = characteristic_flow(g, traj, flat, p, g.x[31]);
    CHECK(res.q.back() == doctest::Approx(g.x[31]).epsilon(1e-14));
    CHECK(res.residual <= 1e-14);
    CHECK(res.wrap_count == 0);
  }
}
