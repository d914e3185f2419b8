#include "bpw/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace bpw {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {
std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for '" + key + "': " + v);
  }
}
}  // namespace

RunConfig RunConfig::parse_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected 'key = value', got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "scenario") cfg.scenario = val;
    else if (key == "system") cfg.system = val;
    else if (key == "L") cfg.L = parse_double(key, val);
    else if (key == "M") cfg.M = static_cast<Eigen::Index>(parse_double(key, val));
    else if (key == "eps") { cfg.params.eps = parse_double(key, val); cfg.has_eps = true; }
    else if (key == "mu") { cfg.params.mu = parse_double(key, val); cfg.has_mu = true; }
    else if (key == "beta") { cfg.params.beta = parse_double(key, val); cfg.has_beta = true; }
    else if (key == "nu") { cfg.params.nu = parse_double(key, val); cfg.has_nu = true; }
    else if (key == "h0") { cfg.params.h0 = parse_double(key, val); cfg.has_h0 = true; }
    else if (key == "dt") { cfg.params.dt = parse_double(key, val); cfg.has_dt = true; }
    else if (key == "t_end") { cfg.params.t_end = parse_double(key, val); cfg.has_t_end = true; }
    else if (key == "output_dir") cfg.output_dir = val;
    else if (key == "stride") cfg.stride = static_cast<Eigen::Index>(parse_double(key, val));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_double(key, val));
    else if (key == "s_list") {
      cfg.s_list.clear();
      std::istringstream vs(val);
      std::string tok;
      while (std::getline(vs, tok, ','))
        cfg.s_list.push_back(parse_double(key, trim(tok)));
      if (cfg.s_list.empty())
        throw std::invalid_argument("config: s_list must not be empty");
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  if (cfg.system != "bp" && cfg.system != "bpw")
    throw std::invalid_argument("config: system must be 'bp' or 'bpw'");
  return cfg;
}

RunConfig RunConfig::parse_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

void RunConfig::apply_scenario_defaults(const Scenario& sc) {
  if (L == 0.0) L = sc.L;
  if (M == 0) M = sc.M;
  const Params& d = sc.params;
  if (!has_eps) params.eps = d.eps;
  if (!has_mu) params.mu = d.mu;
  if (!has_beta) params.beta = d.beta;
  if (!has_nu) params.nu = d.nu;
  if (!has_h0) params.h0 = d.h0;
  if (!has_dt) params.dt = d.dt;
  if (!has_t_end) params.t_end = d.t_end;
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  out << "scenario = " << scenario << "\n"
      << "system = " << system << "\n"
      << "L = " << format_g17(L) << "\n"
      << "M = " << M << "\n"
      << "eps = " << format_g17(params.eps) << "\n"
      << "mu = " << format_g17(params.mu) << "\n"
      << "beta = " << format_g17(params.beta) << "\n"
      << "nu = " << format_g17(params.nu) << "\n"
      << "h0 = " << format_g17(params.h0) << "\n"
      << "dt = " << format_g17(params.dt) << "\n"
      << "t_end = " << format_g17(params.t_end) << "\n"
      << "output_dir = " << output_dir << "\n"
      << "stride = " << stride << "\n"
      << "seed = " << seed << "\n"
      << "s_list = ";
  for (std::size_t i = 0; i < s_list.size(); ++i)
    out << (i ? "," : "") << format_g17(s_list[i]);
  out << "\n";
  return out.str();
}

namespace {
std::string s_label(double s) {
  std::string v = format_g17(s);
  return "E_s" + v;
}
}  // namespace

void write_series(const Trajectory& traj, const Grid& g, const Bathymetry& bath,
                  const Params& p, const RunConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir / "snapshots");

  std::ostringstream csv;
  csv << "t";
  for (double s : traj.s_list) csv << "," << s_label(s);
  csv << ",entropy_H,orlicz,min_h,balance_residual,ineq_slack,sup_zeta,sup_u,sup_ux\n";
  for (const auto& rec : traj.records) {
    csv << format_g17(rec.t);
    for (double e : rec.energy) csv << "," << format_g17(e);
    csv << "," << format_g17(rec.entropy_H) << "," << format_g17(rec.orlicz) << ","
        << format_g17(rec.min_h) << "," << format_g17(rec.balance_residual) << ","
        << format_g17(rec.ineq_slack) << "," << format_g17(rec.sup_zeta) << ","
        << format_g17(rec.sup_u) << "," << format_g17(rec.sup_ux) << "\n";
  }
  atomic_write(dir / "diagnostics.csv", csv.str());

  for (std::size_t si = 0; si < traj.states.size(); ++si) {
    const State& st = traj.states[si];
    const Array h = total_height(g, st.zeta, bath, p.eps);
    std::ostringstream snap;
    snap << "x,zeta,u,h\n";
    for (Eigen::Index i = 0; i < g.size; ++i)
      snap << format_g17(g.x[i]) << "," << format_g17(st.zeta[i]) << ","
           << format_g17(st.u[i]) << "," << format_g17(h[i]) << "\n";
    atomic_write(dir / "snapshots" / ("t_" + std::to_string(si) + ".csv"), snap.str());
  }

  nlohmann::json meta;
  meta["config"] = cfg.echo();
  meta["version"] = "1.0.0";
  meta["seed"] = cfg.seed;
  meta["steps"] = traj.records.size();
  meta["snapshots"] = traj.states.size();
  meta["aborted"] = traj.aborted();
  if (traj.aborted()) {
    meta["abort_kind"] =
        traj.abort == AbortKind::Positivity ? "positivity" : "blowup";
    meta["abort_time"] = traj.abort_time;
  }
  atomic_write(dir / "meta.json", meta.dump(2) + "\n");
}

std::map<std::string, std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file");
  std::vector<std::string> headers;
  {
    std::istringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) headers.push_back(tok);
  }
  std::map<std::string, std::vector<double>> cols;
  for (const auto& h : headers) cols[h] = {};
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::istringstream vs(line);
    std::string tok;
    std::size_t j = 0;
    while (std::getline(vs, tok, ',')) {
      if (j >= headers.size()) throw std::runtime_error("read_csv: ragged row");
      cols[headers[j]].push_back(std::stod(tok));
      ++j;
    }
    if (j != headers.size()) throw std::runtime_error("read_csv: short row");
  }
  return cols;
}

}  // namespace bpw
