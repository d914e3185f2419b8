#include "bpw/diagnostics.hpp"
#include "bpw/estimates.hpp"
#include "bpw/harness.hpp"

#include <doctest.h>

#include <cmath>

using namespace bpw;

TEST_CASE("scenario registry") {
  CHECK(scenario_registry().size() == 8);
  CHECK(find_scenario("flat-gaussian").M == 512);
  CHECK_THROWS_AS(find_scenario("maelstrom"), std::invalid_argument);
  for (const auto& sc : scenario_registry()) {
    const Grid g = Grid::make(sc.L, sc.M);
    const State init = scenario_initial(sc, g);
    CHECK(init.zeta.isFinite().all());
    CHECK(init.u.isFinite().all());
    CHECK(scenario_bathymetry(sc, g).h_b.minCoeff() > 0.0);
  }
}

TEST_CASE("sharp truncation") {
  const Grid g = Grid::make(2.0 * M_PI, 128);
  SUBCASE("band-limited field unchanged") {
    const Array f = g.x.sin() + 0.5 * (3.0 * g.x).cos();
    CHECK((bona_smith_truncate(g, f, 4.0) - f).abs().maxCoeff() <= 1e-13);
  }
  SUBCASE("high mode killed") {
    const Array f = (9.0 * g.x).sin();
    CHECK(bona_smith_truncate(g, f, 5.0).abs().maxCoeff() <= 1e-13);
  }
  SUBCASE("projection: twice equals once, exactly") {
    Array f(g.size);
    for (Eigen::Index i = 0; i < g.size; ++i)
      f[i] = std::sin(3.0 * g.x[i]) + 0.2 * std::cos(17.0 * g.x[i]);
    const Array once = bona_smith_truncate(g, f, 10.0);
    const Array twice = bona_smith_truncate(g, once, 10.0);
    CHECK((twice - once).abs().maxCoeff() <= 1e-15 * once.abs().maxCoeff());
  }
  SUBCASE("growth bound on a decaying-spectrum sample") {
    Corpus c;
    c.decay = 2.5;
    c.cutoff = 60.0;
    const Array f = c.sample(g, 3);
    for (double r : {1.0, 2.0})
      for (double n : {4.0, 8.0, 16.0}) {
        const double lhs = sobolev_norm(g, bona_smith_truncate(g, f, n), 1.0 + r);
        CHECK(lhs <= std::pow(n, r) * sobolev_norm(g, f, 1.0));
      }
  }
}

TEST_CASE("mollifier") {
  SUBCASE("rho has unit mass and support in (0, 1)") {
    const int n = 20000;
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = (i + 0.5) / n;
      const double v = mollifier_rho(t);
      CHECK(v >= 0.0);
      mass += v;
    }
    CHECK(std::abs(mass / n - 1.0) <= 1e-6);
    CHECK(mollifier_rho(0.0) == 0.0);
    CHECK(mollifier_rho(1.0) == 0.0);
    CHECK(mollifier_rho(-0.3) == 0.0);
  }

  const Grid g = Grid::make(2.0 * M_PI, 256);
  SUBCASE("constants are fixed") {
    const Array c = Array::Constant(g.size, 2.5);
    CHECK((mollify(g, c, 4) - 2.5).abs().maxCoeff() <= 1e-12);
  }
  SUBCASE("mass preserved, oscillation never increased") {
    Corpus corp;
    const Array f = corp.sample(g, 11);
    for (int n : {1, 2, 8, 32}) {
      const Array m = mollify(g, f, n);
      CHECK(std::abs(m.sum() - f.sum()) <= 1e-12 * (1.0 + f.abs().sum()));
      CHECK(m.maxCoeff() - m.minCoeff() <= f.maxCoeff() - f.minCoeff() + 1e-12);
      CHECK(m.maxCoeff() <= f.maxCoeff() + 1e-12);
      CHECK(m.minCoeff() >= f.minCoeff() - 1e-12);
    }
  }
  SUBCASE("sine response: damped amplitude, one-sided phase lag") {
    const double k = 3.0;
    const Array f = (k * g.x).sin();
    const int n = 2;
    const Array m = mollify(g, f, n);
    // quadrature oracle: m(x) = integral of rho_n(y) sin(k(x-y)) dy,
    // evaluated with the analytic integrand at high resolution
    const int Q = 1 << 15;
    double cr = 0.0, ci = 0.0, tot = 0.0;
    for (int q = 0; q < Q; ++q) {
      const double t = (q + 0.5) / Q;
      const double w = mollifier_rho(t);
      cr += w * std::cos(k * t / n);
      ci += w * std::sin(k * t / n);
      tot += w;
    }
    cr /= tot;
    ci /= tot;
    double dev = 0.0;
    for (Eigen::Index i = 0; i < g.size; ++i) {
      const double exact =
          std::sin(k * g.x[i]) * cr - std::cos(k * g.x[i]) * ci;
      dev = std::max(dev, std::abs(m[i] - exact));
    }
    CHECK(dev <= 5e-3);  // linear-interpolation error of the grid convolution
    CHECK(std::sqrt(cr * cr + ci * ci) <= 1.0);  // |rho_hat| <= 1
    CHECK(ci > 0.0);  // support on [0, 1/n] lags the phase
  }
  SUBCASE("Jensen monotonicity of the Orlicz value") {
    const Bathymetry flat = Bathymetry::flat(g);
    Array zeta(g.size);
    for (Eigen::Index i = 0; i < g.size; ++i)
      zeta[i] = -8.0 * std::max(0.0, 1.0 - std::abs(g.x[i] - M_PI) / 1.0);
    for (int n : {1, 2, 4, 8, 16})
      CHECK(orlicz_norm(g, mollify(g, zeta, n), flat, 0.1) <=
            orlicz_norm(g, zeta, flat, 0.1) + 1e-12);
  }
}

TEST_CASE("bona-smith experiment on zero data") {
  const Grid g = Grid::make(16.0, 64);
  State zero;
  zero.zeta = Array::Zero(g.size);
  zero.u = Array::Zero(g.size);
  Params p;
  p.dt = 0.01;
  p.t_end = 0.1;
  const BonaSmithReport rep =
      bona_smith_experiment(g, zero, Bathymetry::flat(g), p, 2.0, {2, 4, 8});
  CHECK(rep.ok);
  for (double d : rep.diffs) CHECK(d <= 1e-14);
}

TEST_CASE("band-limited data isolates the nu perturbation") {
  // data below min(n_list): all truncations coincide, differences are driven
  // only by nu_n = n^-5 and shrink monotonically
  const Grid g = Grid::make(16.0, 128);
  State data;
  data.zeta = 0.1 * (2.0 * M_PI / 16.0 * g.x).sin();
  data.u = Array::Zero(g.size);
  Params p;
  p.dt = 0.01;
  p.t_end = 0.5;
  const BonaSmithReport rep =
      bona_smith_experiment(g, data, Bathymetry::flat(g), p, 2.0, {4, 8, 16});
  REQUIRE(rep.ok);
  REQUIRE(rep.diffs.size() == 2);
  CHECK(rep.diffs[0] > rep.diffs[1]);
  CHECK(rep.diffs[0] <= 1e-3);
  // n^-4-consistent trend: exponent close to -4 or steeper
  CHECK(rep.fitted_exponent <= -3.0);
}

TEST_CASE("weak-limit experiment on smooth data") {
  const Grid g = Grid::make(16.0, 128);
  State smooth;
  smooth.zeta = 0.5 * (-((g.x - 8.0) / 1.5).square()).exp();
  smooth.u = Array::Zero(g.size);
  Params p;
  p.dt = 0.01;
  p.t_end = 0.2;
  const WeakLimitReport rep =
      weak_limit_experiment(g, smooth, Bathymetry::flat(g), p, {4, 8, 16});
  CHECK(rep.ok);
  CHECK(rep.inq2_ok);
  CHECK(rep.jensen_ok);
  // smooth data: mollified runs are near-identical and moments converge
  for (double d : rep.pairwise_u_distance) CHECK(d <= 0.05);
  REQUIRE(rep.moments.size() == 3);
  for (std::size_t j = 0; j < rep.moments[0].size(); ++j)
    CHECK(std::abs(rep.moments[2][j] - rep.moments[1][j]) <=
          std::abs(rep.moments[1][j] - rep.moments[0][j]) + 1e-6);
}

TEST_CASE("weak-limit experiment on zero data") {
  const Grid g = Grid::make(16.0, 64);
  State zero;
  zero.zeta = Array::Zero(g.size);
  zero.u = Array::Zero(g.size);
  Params p;
  p.dt = 0.01;
  p.t_end = 0.1;
  const WeakLimitReport rep =
      weak_limit_experiment(g, zero, Bathymetry::flat(g), p, {2, 4});
  CHECK(rep.ok);
  for (double o : rep.orlicz_values) CHECK(o <= 1e-12);
  for (double d : rep.pairwise_u_distance) CHECK(d <= 1e-12);
}
