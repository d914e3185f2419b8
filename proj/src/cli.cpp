#include "bpw/cli.hpp"

#include "bpw/diagnostics.hpp"
#include "bpw/estimate_constants.hpp"
#include "bpw/estimates.hpp"
#include "bpw/harness.hpp"
#include "bpw/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace bpw {
namespace {

fs::path resolve_output(const std::string& dir) {
  const char* root = std::getenv("BPWAVE_OUTPUT_ROOT");
  if (root && *root) return fs::path(root) / dir;
  return fs::path(dir);
}

struct CommonOpts {
  std::string config_path;
  std::string scenario;
  std::string out;
  double t_end = -1.0, dt = -1.0;
  std::vector<double> s_list;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "run configuration file (key = value lines)");
  cmd->add_option("--scenario", o.scenario, "named scenario");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--t-end", o.t_end, "horizon override");
  cmd->add_option("--dt", o.dt, "time step override");
  cmd->add_option("--s", o.s_list, "energy exponents for diagnostics");
  cmd->add_option("--seed", o.seed, "reproducibility seed");
}

RunConfig build_config(const CommonOpts& o, const std::string& system) {
  RunConfig cfg;
  if (!o.config_path.empty()) cfg = RunConfig::parse_file(o.config_path);
  if (!o.scenario.empty()) cfg.scenario = o.scenario;
  if (!system.empty()) cfg.system = system;
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.t_end > 0.0) { cfg.params.t_end = o.t_end; cfg.has_t_end = true; }
  if (o.dt > 0.0) { cfg.params.dt = o.dt; cfg.has_dt = true; }
  if (!o.s_list.empty()) cfg.s_list = o.s_list;
  if (o.seed != 0) cfg.seed = o.seed;
  cfg.apply_scenario_defaults(find_scenario(cfg.scenario));
  return cfg;
}

int run_simulate(const RunConfig& cfg) {
  const Scenario& sc = find_scenario(cfg.scenario);
  const Grid g = Grid::make(cfg.L, cfg.M);
  const Bathymetry bath = scenario_bathymetry(sc, g);
  Params p = cfg.params;
  const State init = scenario_initial(sc, g);

  SimOptions opts;
  opts.stride = cfg.stride;
  opts.s_list = cfg.s_list;
  const SystemKind kind =
      cfg.system == "bp" ? SystemKind::BP_regularized : SystemKind::BPW;
  const Trajectory traj = simulate(g, init, kind, bath, p, opts);
  write_series(traj, g, bath, p, cfg, resolve_output(cfg.output_dir));
  if (traj.aborted()) {
    std::cerr << "ABORT: "
              << (traj.abort == AbortKind::Positivity ? "positivity" : "blowup")
              << " at t = " << format_g17(traj.abort_time) << "\n";
    return 1;
  }
  std::cout << "wrote " << traj.records.size() << " diagnostics rows and "
            << traj.states.size() << " snapshots to "
            << resolve_output(cfg.output_dir).string() << "\n";
  return 0;
}

int run_bona_smith(const RunConfig& cfg, double s, std::vector<double> n_list) {
  const Scenario& sc = find_scenario(cfg.scenario);
  const Grid g = Grid::make(cfg.L, cfg.M);
  const Bathymetry bath = scenario_bathymetry(sc, g);
  const State data = scenario_initial(sc, g);

  const BonaSmithReport rep = bona_smith_experiment(g, data, bath, cfg.params, s, n_list);
  json out;
  out["n"] = rep.n_values;
  out["diffs"] = rep.diffs;
  out["fitted_exponent"] = rep.fitted_exponent;
  out["horizon"] = rep.horizon;
  out["gd_ratios"] = rep.gd_ratios;
  out["ok"] = rep.ok;
  if (!rep.failure.empty()) out["failure"] = rep.failure;
  bool decreasing = rep.ok;
  for (std::size_t i = 0; i + 1 < rep.diffs.size(); ++i)
    decreasing = decreasing && rep.diffs[i + 1] < rep.diffs[i];
  out["diffs_strictly_decreasing"] = decreasing;
  atomic_write(resolve_output(cfg.output_dir) / "bona_smith.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return (rep.ok && decreasing) ? 0 : 1;
}

int run_weak_limit(const RunConfig& cfg, std::vector<int> n_list) {
  const Scenario& sc = find_scenario(cfg.scenario);
  const Grid g = Grid::make(cfg.L, cfg.M);
  const Bathymetry bath = scenario_bathymetry(sc, g);
  const State rough = scenario_initial(sc, g);

  const WeakLimitReport rep = weak_limit_experiment(g, rough, bath, cfg.params, n_list);
  json out;
  out["n"] = rep.n_values;
  out["min_inq2_slack"] = rep.min_inq2_slack;
  out["inq2_ok"] = rep.inq2_ok;
  out["orlicz"] = rep.orlicz_values;
  out["orlicz_unmollified"] = rep.orlicz_unmollified;
  out["jensen_ok"] = rep.jensen_ok;
  out["moments"] = rep.moments;
  out["pairwise_u_distance"] = rep.pairwise_u_distance;
  out["ok"] = rep.ok;
  if (!rep.failure.empty()) out["failure"] = rep.failure;
  atomic_write(resolve_output(cfg.output_dir) / "weak_limit.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return rep.ok ? 0 : 1;
}

int run_verify_entropy(const RunConfig& cfg) {
  const Scenario& sc = find_scenario(cfg.scenario);
  const Grid g = Grid::make(cfg.L, cfg.M);
  const Bathymetry bath = scenario_bathymetry(sc, g);
  const State init = scenario_initial(sc, g);

  double max_compat = 0.0;
  for (int i = 1; i <= 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double h = 0.1 * i;
      const double u = -1.0 + 2.0 * j / 19.0;
      max_compat = std::max(max_compat, compatibility_residual(h, u, cfg.params.eps));
    }

  const Trajectory traj =
      simulate(g, init, SystemKind::BPW, bath, cfg.params, SimOptions{});
  double max_balance = 0.0;
  for (std::size_t i = 1; i < traj.records.size(); ++i)
    max_balance = std::max(max_balance, traj.records[i].balance_residual);
  const double min_slack = entropy_inequality_check(traj);

  json out;
  out["max_compatibility_residual"] = max_compat;
  out["max_balance_residual"] = max_balance;
  out["min_inequality_slack"] = min_slack;
  out["aborted"] = traj.aborted();
  const double balance_tol = bath.is_flat() ? 1e-6 : 1e-4;
  const bool ok = !traj.aborted() && max_compat <= 1e-12 &&
                  max_balance <= balance_tol && min_slack >= 0.0;
  out["ok"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int run_verify_elliptic(const RunConfig& cfg) {
  const Grid g = Grid::make(cfg.L, cfg.M);
  const Bathymetry bath =
      cfg.params.beta == 0.0
          ? Bathymetry::flat(g)
          : Bathymetry::preset(g, "gaussian-bump", cfg.params.beta, 0.5, 3.0);
  const TbOperator op = TbOperator::assemble(g, bath, cfg.params.mu);
  const double h0 = bath.h_b.minCoeff();
  const double c_theory = coercivity_constant(h0, cfg.params.mu);

  Corpus corpus;
  corpus.seed = cfg.seed;
  corpus.size = 100;
  corpus.cutoff = M_PI / g.dx / 4.0;  // stay away from the annihilated Nyquist mode

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(op.A);
  double max_res = 0.0, max_lu = 0.0, max_selfadj = 0.0, min_ratio = 1e300,
         max_form = 0.0;
  for (int i = 0; i < corpus.size; ++i) {
    const Array f = corpus.sample(g, i);
    const Array u = solve_Tb(op, f);
    max_res = std::max(max_res, (apply_Tb(op, u) - f).abs().maxCoeff());
    const Array u_lu = lu.solve(f.matrix()).array();
    max_lu = std::max(max_lu, (u - u_lu).abs().maxCoeff());
    const Array v = corpus.sample(g, corpus.size + i);
    max_selfadj = std::max(max_selfadj,
                           std::abs(inner_product(g, apply_Tb(op, f), v) -
                                    inner_product(g, f, apply_Tb(op, v))));
    const double a = inner_product(g, apply_Tb(op, f), f);
    const double n1 = sobolev_mu_norm(g, f, 0.0, cfg.params.mu);
    min_ratio = std::min(min_ratio, a / (n1 * n1));
    max_form = std::max(max_form,
                        std::abs(a - coercivity_form(op, f)) / std::max(1.0, a));
  }

  json out;
  out["max_residual"] = max_res;
  out["max_lu_disagreement"] = max_lu;
  out["max_self_adjointness_defect"] = max_selfadj;
  out["min_coercivity_ratio"] = min_ratio;
  out["theory_constant"] = c_theory;
  out["max_form_identity_error"] = max_form;
  const bool ok = max_res <= 1e-10 && max_lu <= 1e-8 && max_selfadj <= 1e-10 &&
                  min_ratio >= 0.95 * c_theory && max_form <= 1e-6;
  out["ok"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int run_verify_estimates(const RunConfig& cfg) {
  const Grid g = Grid::make(2.0 * M_PI, 2048);
  Corpus corpus;
  corpus.seed = cfg.seed;
  corpus.size = 200;

  struct Check { std::string kind; double shipped; };
  const std::vector<Check> checks = {
      {"prod2", constants::C_prod2}, {"prod3", constants::C_prod3},
      {"prod5", constants::C_prod5}, {"prod6", constants::C_prod6},
      {"proN1", constants::C_proN1}, {"proN2", constants::C_proN2}};

  json out;
  bool ok = true;
  {
    const RatioReport rep = sweep_commutator(g, corpus, {8, 32, 128});
    const bool pass = rep.max <= 1.1 * constants::C_cm1;
    out["cm1"] = {{"max", rep.max}, {"shipped", constants::C_cm1}, {"ok", pass}};
    ok = ok && pass;
  }
  for (const auto& c : checks) {
    const RatioReport rep = sweep_product(c.kind, g, corpus);
    const bool pass = rep.max <= 1.1 * c.shipped;
    out[c.kind] = {{"max", rep.max}, {"shipped", c.shipped}, {"ok", pass}};
    ok = ok && pass;
  }
  {
    const Bathymetry bath = Bathymetry::flat(g);
    Corpus small = corpus;
    small.size = 50;
    const RatioReport r0 = sweep_inverse(g, bath, cfg.params.mu, 0.0, small);
    const RatioReport r1 = sweep_inverse(g, bath, cfg.params.mu, 1.0, small);
    const bool pass = r0.max <= 1.1 * constants::C_estT_s0 &&
                      r1.max <= 1.1 * constants::C_estT_s1;
    out["estT"] = {{"max_s0", r0.max}, {"max_s1", r1.max}, {"ok", pass}};
    ok = ok && pass;
  }
  out["ok"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Pseudospectral solver and verification suite for dispersive "
               "shallow-water wave systems"};
  app.require_subcommand(1);

  CommonOpts sim_o, bs_o, wl_o, ve_o, vest_o, vell_o;
  std::string system = "bpw";
  double bs_s = 2.0;
  std::vector<double> bs_n = {8, 16, 32, 64};
  std::vector<int> wl_n = {2, 4, 8, 16};
  double vell_L = 50.0;
  long vell_M = 256;

  auto* sim = app.add_subcommand("simulate", "integrate one scenario and write series files");
  add_common(sim, sim_o);
  sim->add_option("--system", system, "bp or bpw")->check(CLI::IsMember({"bp", "bpw"}));

  auto* bs = app.add_subcommand("bona-smith", "regularization convergence study");
  add_common(bs, bs_o);
  bs->add_option("--sobolev-s", bs_s, "Sobolev index of the data space");
  bs->add_option("--n", bs_n, "truncation frequencies");

  auto* wl = app.add_subcommand("weak-limit", "mollified rough-data study");
  add_common(wl, wl_o);
  wl->add_option("--n", wl_n, "mollification indices");

  auto* ve = app.add_subcommand("verify-entropy", "entropy pair, balance, and inequality checks");
  add_common(ve, ve_o);

  auto* vest = app.add_subcommand("verify-estimates", "bounded-ratio estimate checks");
  add_common(vest, vest_o);

  auto* vell = app.add_subcommand("verify-elliptic", "dispersive-operator solver checks");
  add_common(vell, vell_o);
  vell->add_option("--L", vell_L, "domain length");
  vell->add_option("--M", vell_M, "grid size");

  app.add_subcommand("list-scenarios", "print the scenario registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help exits 0; any parse failure is a config error
  }

  try {
    if (app.got_subcommand("list-scenarios")) {
      for (const auto& sc : scenario_registry())
        std::cout << sc.name << "  -  " << sc.description << "\n";
      return 0;
    }
    if (app.got_subcommand(sim)) return run_simulate(build_config(sim_o, system));
    if (app.got_subcommand(bs)) return run_bona_smith(build_config(bs_o, "bp"), bs_s, bs_n);
    if (app.got_subcommand(wl)) return run_weak_limit(build_config(wl_o, "bpw"), wl_n);
    if (app.got_subcommand(ve)) return run_verify_entropy(build_config(ve_o, "bpw"));
    if (app.got_subcommand(vest)) {
      RunConfig cfg;
      if (vest_o.seed != 0) cfg.seed = vest_o.seed;
      cfg.params.mu = 0.1;
      return run_verify_estimates(cfg);
    }
    if (app.got_subcommand(vell)) {
      RunConfig cfg;
      cfg.L = vell_L;
      cfg.M = vell_M;
      cfg.params.beta = 0.3;
      if (vell_o.seed != 0) cfg.seed = vell_o.seed;
      return run_verify_elliptic(cfg);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace bpw
