#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "evolution.hpp"

namespace capwave {

namespace detail {

inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& v, const std::string& what) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for " + what + ": '" + v + "'");
  }
}

inline int parse_int(const std::string& v, const std::string& what) {
  try {
    size_t pos = 0;
    int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for " + what + ": '" + v + "'");
  }
}

inline bool parse_bool(const std::string& v, const std::string& what) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config: bad boolean for " + what + ": '" + v + "'");
}

inline std::vector<double> parse_list(const std::string& v, const std::string& what) {
  std::vector<double> out;
  std::string cur;
  std::stringstream ss(v);
  while (std::getline(ss, cur, ',')) {
    cur = trim(cur);
    if (cur.empty()) throw ConfigError("config: empty entry in list " + what);
    out.push_back(parse_double(cur, what));
  }
  if (out.empty()) throw ConfigError("config: empty list for " + what);
  return out;
}

}  // namespace capwave::detail

/// Plain-text checkpoint: one header line
///   CAPWAVE1 N=<int> L=<g17> t=<g17> sigma=<g17> gravity=<0|1>
/// followed by N lines "g_j v_j" at full precision. Round-trips are
/// lossless.
inline void write_checkpoint(const std::string& path, const SurfaceState& s, double sigma,
                             int gravity) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_checkpoint: cannot open " + path);
  out << "CAPWAVE1 N=" << s.g.grid.N << " L=" << detail::fmt17(s.g.grid.L)
      << " t=" << detail::fmt17(s.t) << " sigma=" << detail::fmt17(sigma)
      << " gravity=" << gravity << "\n";
  for (int j = 0; j < s.g.size(); ++j)
    out << detail::fmt17(s.g[j].real()) << " " << detail::fmt17(s.v[j].real()) << "\n";
  if (!out) throw ConfigError("write_checkpoint: write failed for " + path);
}

struct LoadedCheckpoint {
  SurfaceState state;
  double sigma = 0.0;
  int gravity = 1;
};

inline LoadedCheckpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("read_checkpoint: cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "CAPWAVE1") throw ConfigError("read_checkpoint: bad magic in " + path);
  auto field = [&](const char* name) {
    std::string tok;
    if (!(in >> tok)) throw ConfigError("read_checkpoint: truncated header in " + path);
    std::string prefix = std::string(name) + "=";
    if (tok.rfind(prefix, 0) != 0)
      throw ConfigError("read_checkpoint: expected " + prefix + " in " + path);
    return tok.substr(prefix.size());
  };
  int N = detail::parse_int(field("N"), "checkpoint N");
  double L = detail::parse_double(field("L"), "checkpoint L");
  double t = detail::parse_double(field("t"), "checkpoint t");
  double sigma = detail::parse_double(field("sigma"), "checkpoint sigma");
  int gravity = detail::parse_int(field("gravity"), "checkpoint gravity");
  Grid grid = make_grid(N, L);

  LoadedCheckpoint out;
  out.state.t = t;
  out.state.g = Field(grid);
  out.state.v = Field(grid);
  out.sigma = sigma;
  out.gravity = gravity;
  for (int j = 0; j < N; ++j) {
    double gj, vj;
    if (!(in >> gj >> vj)) throw ConfigError("read_checkpoint: truncated data in " + path);
    out.state.g[j] = gj;
    out.state.v[j] = vj;
  }
  return out;
}

/// Full run configuration. Sections: [grid], [params], [initial_data],
/// [outputs], [study]. Unknown sections or keys are rejected.
struct Config {
  int N = 256;
  double L = 2.0 * pi;
  SimParams params;

  std::string kind;  // flat | wave | crest | checkpoint
  double A = 0.01;
  int wave_k = 1;
  std::optional<double> nu;
  std::optional<double> eta;
  double alpha0 = 0.0;
  std::string path;
  double mollify_eps = 0.0;

  std::string out_dir = "out";
  bool energy_csv = true;
  bool checkpoints = true;

  std::vector<double> dt_list = {0.02, 0.01, 0.005, 0.0025};
  std::vector<double> eps_list = {0.04, 0.02, 0.01, 0.005};
  std::vector<double> delta_list = {0.08, 0.04, 0.02};
  int lambda = 2;
};

inline void config_set(Config& cfg, const std::string& section, const std::string& key,
                       const std::string& value) {
  auto ctx = section + "." + key;
  if (section == "grid") {
    if (key == "N") cfg.N = detail::parse_int(value, ctx);
    else if (key == "L") cfg.L = detail::parse_double(value, ctx);
    else throw ConfigError("config: unknown key " + ctx);
  } else if (section == "params") {
    if (key == "sigma") cfg.params.sigma = detail::parse_double(value, ctx);
    else if (key == "gravity") cfg.params.gravity = detail::parse_int(value, ctx);
    else if (key == "delta") cfg.params.delta = detail::parse_double(value, ctx);
    else if (key == "eps_visc") cfg.params.eps_visc = detail::parse_double(value, ctx);
    else if (key == "dt") cfg.params.dt = (value == "auto") ? 0.0 : detail::parse_double(value, ctx);
    else if (key == "T") cfg.params.T = detail::parse_double(value, ctx);
    else if (key == "dealias") cfg.params.dealias_fraction = detail::parse_double(value, ctx);
    else if (key == "cfl") cfg.params.cfl = detail::parse_double(value, ctx);
    else if (key == "output_every") cfg.params.output_every = detail::parse_int(value, ctx);
    else if (key == "blowup_ceiling") cfg.params.blowup_ceiling = detail::parse_double(value, ctx);
    else if (key == "n_extra") cfg.params.n_extra = detail::parse_int(value, ctx);
    else throw ConfigError("config: unknown key " + ctx);
  } else if (section == "initial_data") {
    if (key == "kind") cfg.kind = value;
    else if (key == "A") cfg.A = detail::parse_double(value, ctx);
    else if (key == "k") cfg.wave_k = detail::parse_int(value, ctx);
    else if (key == "nu") cfg.nu = detail::parse_double(value, ctx);
    else if (key == "eta") cfg.eta = detail::parse_double(value, ctx);
    else if (key == "alpha0") cfg.alpha0 = detail::parse_double(value, ctx);
    else if (key == "path") cfg.path = value;
    else if (key == "mollify_eps") cfg.mollify_eps = detail::parse_double(value, ctx);
    else throw ConfigError("config: unknown key " + ctx);
  } else if (section == "outputs") {
    if (key == "dir") cfg.out_dir = value;
    else if (key == "energy_csv") cfg.energy_csv = detail::parse_bool(value, ctx);
    else if (key == "checkpoints") cfg.checkpoints = detail::parse_bool(value, ctx);
    else throw ConfigError("config: unknown key " + ctx);
  } else if (section == "study") {
    if (key == "dt_list") cfg.dt_list = detail::parse_list(value, ctx);
    else if (key == "eps_list") cfg.eps_list = detail::parse_list(value, ctx);
    else if (key == "delta_list") cfg.delta_list = detail::parse_list(value, ctx);
    else if (key == "lambda") cfg.lambda = detail::parse_int(value, ctx);
    else throw ConfigError("config: unknown key " + ctx);
  } else {
    throw ConfigError("config: unknown section [" + section + "]");
  }
}

inline Config parse_config(std::istream& in) {
  Config cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " + std::to_string(lineno));
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config: empty section name at line " + std::to_string(lineno));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config: empty key at line " + std::to_string(lineno));
    if (section.empty())
      throw ConfigError("config: key outside any section at line " + std::to_string(lineno));
    config_set(cfg, section, key, value);
  }
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  return parse_config(in);
}

/// Apply one command-line override of the form section.key=value.
inline void apply_override(Config& cfg, const std::string& spec) {
  size_t eq = spec.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override: expected section.key=value, got '" + spec + "'");
  std::string path = spec.substr(0, eq);
  std::string value = detail::trim(spec.substr(eq + 1));
  size_t dot = path.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override: expected section.key=value, got '" + spec + "'");
  config_set(cfg, detail::trim(path.substr(0, dot)), detail::trim(path.substr(dot + 1)), value);
}

/// Build the initial state described by the config.
inline SurfaceState build_initial(const Config& cfg, double* sigma_out = nullptr,
                                  int* gravity_out = nullptr) {
  Grid grid = make_grid(cfg.N, cfg.L);
  SurfaceState s;
  if (cfg.kind == "flat") {
    s.g = Field(grid);
    s.v = Field(grid);
  } else if (cfg.kind == "wave") {
    s = gen_wave(cfg.A, cfg.wave_k, grid, cfg.params.dealias_fraction);
  } else if (cfg.kind == "crest") {
    if (!cfg.nu) throw ConfigError("initial_data: missing field nu for kind crest");
    if (!cfg.eta) throw ConfigError("initial_data: missing field eta for kind crest");
    s = gen_crest(CrestSpec{*cfg.nu, *cfg.eta, cfg.alpha0}, grid);
  } else if (cfg.kind == "checkpoint") {
    if (cfg.path.empty()) throw ConfigError("initial_data: missing field path for kind checkpoint");
    LoadedCheckpoint lc = read_checkpoint(cfg.path);
    if (sigma_out) *sigma_out = lc.sigma;
    if (gravity_out) *gravity_out = lc.gravity;
    s = lc.state;
  } else if (cfg.kind.empty()) {
    throw ConfigError("initial_data: missing field kind");
  } else {
    throw ConfigError("initial_data: unknown kind '" + cfg.kind + "'");
  }
  if (cfg.mollify_eps > 0.0) s = mollify_state(s, cfg.mollify_eps, cfg.params.dealias_fraction);
  return s;
}

inline const char* csv_header() {
  return "t,E_sigma_0,E_sigma_1,E_sigma_2,E_sigma_3,E_sigma_4,E_sigma_total,"
         "calE_sigma_1,calE_sigma_2,calE_sigma_total,solverE_3_5,solverE_4_5,"
         "A1_min,taylor_min,kappa_linf,sigma13_kappa_linf,blowup_q,residual_fund";
}

inline std::string csv_row(const EnergyReport& r) {
  std::string out = detail::fmt17(r.t);
  for (int i = 0; i < 5; ++i) out += "," + detail::fmt17(r.E_sigma[i]);
  out += "," + detail::fmt17(r.E_sigma_total);
  out += "," + detail::fmt17(r.calE_1);
  out += "," + detail::fmt17(r.calE_2);
  out += "," + detail::fmt17(r.calE_total);
  out += "," + detail::fmt17(r.solver_E.size() > 0 ? r.solver_E[0] : 0.0);
  out += "," + detail::fmt17(r.solver_E.size() > 1 ? r.solver_E[1] : 0.0);
  out += "," + detail::fmt17(r.A1_min);
  out += "," + detail::fmt17(r.taylor_min);
  out += "," + detail::fmt17(r.curvature_linf);
  out += "," + detail::fmt17(r.sigma13_kappa);
  out += "," + detail::fmt17(r.blowup_q);
  out += "," + detail::fmt17(r.residual_fundamental);
  return out;
}

inline void write_energy_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_energy_csv: cannot open " + path);
  out << csv_header() << "\n";
  for (const Checkpoint& cp : traj.points) out << csv_row(cp.report) << "\n";
  if (!out) throw ConfigError("write_energy_csv: write failed for " + path);
}

}  // namespace capwave
