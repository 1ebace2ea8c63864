// capwave: pseudo-spectral simulator for 2D capillary-gravity waves in
// conformal coordinates.
//
//   capwave gen      --config=FILE [section.key=value ...]
//   capwave simulate --config=FILE [section.key=value ...]
//   capwave validate [section.key=value ...]
//   capwave study    --study=NAME --config=FILE [section.key=value ...]
//
// Exit codes: 0 ok, 2 bad config/usage, 3 blow-up abort, 4 numerical failure.

#include <capwave/capwave.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <random>
#include <string>
#include <vector>

using namespace capwave;

namespace {

struct Args {
  std::string command;
  std::string config_path;
  std::string study;
  bool inject_fault = false;
  std::vector<std::string> overrides;
};

Args parse_args(int argc, char** argv) {
  Args a;
  if (argc < 2) throw ConfigError("usage: capwave <gen|simulate|validate|study> [options]");
  a.command = argv[1];
  for (int i = 2; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind("--config=", 0) == 0) {
      a.config_path = arg.substr(9);
    } else if (arg.rfind("--study=", 0) == 0) {
      a.study = arg.substr(8);
    } else if (arg == "--inject-fault") {
      a.inject_fault = true;
    } else {
      if (arg.rfind("--", 0) == 0) arg = arg.substr(2);
      a.overrides.push_back(arg);
    }
  }
  return a;
}

Config make_config(const Args& a) {
  Config cfg;
  if (!a.config_path.empty()) cfg = load_config(a.config_path);
  for (const std::string& ov : a.overrides) apply_override(cfg, ov);
  return cfg;
}

std::string g6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void print_report(const EnergyReport& r) {
  std::cout << "t=" << g6(r.t) << " E_sigma=" << g6(r.E_sigma_total)
            << " calE=" << g6(r.calE_total) << " solverE_3_5=" << g6(r.solver_E[0])
            << " A1_min=" << g6(r.A1_min) << " kappa_linf=" << g6(r.curvature_linf)
            << " taylor_min=" << g6(r.taylor_min) << " blowup_q=" << g6(r.blowup_q)
            << "\n";
}

std::string checkpoint_name(const std::string& dir, size_t idx) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "checkpoint_%06zu.txt", idx);
  return (std::filesystem::path(dir) / buf).string();
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const Config& cfg) {
  double sigma = cfg.params.sigma;
  int gravity = cfg.params.gravity;
  SurfaceState s = build_initial(cfg, &sigma, &gravity);
  std::filesystem::create_directories(cfg.out_dir);
  std::string path = (std::filesystem::path(cfg.out_dir) / "initial.txt").string();
  write_checkpoint(path, s, sigma, gravity);
  EnergyReport r = make_report(s, sigma, gravity, cfg.params.n_extra, cfg.params.dealias_fraction);
  std::cout << "wrote " << path << "\n";
  print_report(r);
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

std::string describe_initial(const Config& cfg) {
  std::ostringstream ss;
  ss << "kind=" << cfg.kind << " N=" << cfg.N << " L=" << cfg.L;
  if (cfg.kind == "wave") ss << " A=" << cfg.A << " k=" << cfg.wave_k;
  if (cfg.kind == "crest") {
    if (cfg.nu) ss << " nu=" << *cfg.nu;
    if (cfg.eta) ss << " eta=" << *cfg.eta;
  }
  if (cfg.kind == "checkpoint") ss << " path=" << cfg.path;
  if (cfg.mollify_eps > 0.0) ss << " mollify_eps=" << cfg.mollify_eps;
  return ss.str();
}

int cmd_simulate(const Config& cfg) {
  double sigma = cfg.params.sigma;
  int gravity = cfg.params.gravity;
  SurfaceState s0 = build_initial(cfg, &sigma, &gravity);
  SimParams p = cfg.params;
  p.sigma = sigma;
  p.gravity = gravity;

  std::filesystem::create_directories(cfg.out_dir);
  size_t idx = 0;
  CheckpointSink sink;
  if (cfg.checkpoints) {
    sink = [&](const Checkpoint& cp) {
      write_checkpoint(checkpoint_name(cfg.out_dir, idx++), cp.state, p.sigma, p.gravity);
    };
  }
  Trajectory traj = evolve(s0, p, sink);
  traj.provenance = describe_initial(cfg);
  if (cfg.energy_csv)
    write_energy_csv((std::filesystem::path(cfg.out_dir) / "energy.csv").string(), traj);

  const Checkpoint& last = traj.points.back();
  double dev = linf(last.state.g - s0.g) / std::max(1.0, linf(s0.g));
  std::cout << "initial: " << traj.provenance << "\n";
  std::cout << "checkpoints=" << traj.points.size() << " final_t=" << g6(last.state.t)
            << " status=" << (traj.status == EvolveStatus::ok ? "ok" : "blowup")
            << " delta_g_initial=" << g6(dev) << "\n";
  print_report(last.report);
  return traj.status == EvolveStatus::ok ? 0 : 3;
}

// ---------------------------------------------------------------------------
// validate: self-contained identity and consistency suites

struct SuiteResult {
  std::string name;
  double residual;
  double tol;
  bool pass() const { return residual <= tol; }
};

Field random_band_field(const Grid& g, int kmax, std::mt19937& rng, double amp) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Field f(g);
  for (int k = 1; k <= kmax; ++k) {
    double ar = amp * U(rng) / (1.0 + k), ai = amp * U(rng) / (1.0 + k);
    for (int j = 0; j < g.N; ++j) {
      double ph = k * g.node(j);
      f[j] += ar * std::cos(ph) + ai * std::sin(ph);
    }
  }
  return f;
}

double rel_linf(const Field& a, const Field& b) {
  return linf(a - b) / (1.0 + linf(b));
}

std::vector<SuiteResult> run_validate_suites(const Config& cfg, bool inject_fault) {
  Grid g = make_grid(cfg.N, cfg.L);
  std::mt19937 rng(12345);
  std::vector<SuiteResult> out;

  // operator identities on random band-limited fields
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Field f = random_band_field(g, g.N / 4, rng, 1.0) +
                iu * random_band_field(g, g.N / 4, rng, 1.0);
      Field f0 = f - mean(f);
      Field h2 = hilbert(hilbert(f));
      if (inject_fault && trial == 7)
        h2 = h2 + 1e-6 * sample(g, [](double a) { return std::sin(a); });
      worst = std::max(worst, rel_linf(h2, f0));
      worst = std::max(worst, rel_linf(fractional_deriv(f, 1.0), iu * hilbert(derivative(f))));
      Field rf = re(f0);
      worst = std::max(worst, rel_linf(rf + hilbert(rf), f0 - iu * im(f0 - hilbert(f0))));
      Field imf = iu * im(f0);
      worst = std::max(worst, rel_linf(imf + hilbert(imf), f0 - re(f0 - hilbert(f0))));
      worst = std::max(worst, rel_linf(project_holo(f) + project_antiholo(f), f));
      worst = std::max(worst, rel_linf(poisson_smooth(poisson_smooth(f, 0.02), 0.03),
                                       poisson_smooth(f, 0.05)));
    }
    out.push_back({"operator_identities", worst, 1e-12});
  }

  // two-form split of a mean-free field through H
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Field f = random_band_field(g, g.N / 4, rng, 1.0);
      f = f - mean(f);
      Field lhs1 = f + hilbert(f);
      Field rhs1 = 2.0 * project_holo(f);
      worst = std::max(worst, rel_linf(lhs1, rhs1));
      Field hr = hilbert(re(f));
      Field want = iu * im(hilbert(f));
      worst = std::max(worst, rel_linf(hr, want));
    }
    out.push_back({"real_imag_forms", worst, 1e-12});
  }

  // bracket symmetry and bilinearity (independent dealias paths)
  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Field h = random_band_field(g, g.N / 16, rng, 1.0);
      Field f = random_band_field(g, g.N / 16, rng, 1.0);
      Field q = random_band_field(g, g.N / 16, rng, 1.0);
      Field ab = triple_bracket_dg(h, f, q);
      Field ba = triple_bracket_dg(f, h, q);
      double scale = 1.0 + linf(ab);
      worst = std::max(worst, linf(ab - ba) / scale);
      Field lin = triple_bracket_dg(h, f + 2.0 * q, q);
      Field sum = triple_bracket_dg(h, f, q) + 2.0 * triple_bracket_dg(h, q, q);
      worst = std::max(worst, linf(lin - sum) / (1.0 + linf(sum)));
    }
    out.push_back({"bracket_symmetry", worst, 1e-10});
  }

  // holomorphic reduction (I-H)(b dg) = [b,H] dg
  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Field b = random_band_field(g, g.N / 16, rng, 1.0);
      Field gh = project_holo(random_band_field(g, g.N / 16, rng, 1.0));
      Field prod = dealias(b * derivative(gh));
      Field lhs = prod - hilbert(prod);
      Field rhs = commutator_hilbert_deriv(b, gh);
      worst = std::max(worst, linf(lhs - rhs) / (1.0 + linf(rhs)));
    }
    out.push_back({"holomorphic_reduction", worst, 1e-12});
  }

  // derived-field consistency on random states
  {
    double worst_theta = 0.0, worst_a1s = 0.0, worst_a1 = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      SurfaceState s;
      s.g = re(random_band_field(g, 10, rng, 0.1));
      s.v = re(random_band_field(g, 10, rng, 0.1));
      double sigma = 0.5;
      DerivedFields der = derive(s, sigma, 1);
      ConformalState cs = to_conformal(s);
      Field invZap = map(cs.Zap, [](cplx z) { return 1.0 / z; });
      Field absZap = map(cs.Zap, [](cplx z) { return cplx(std::abs(z), 0.0); });
      Field w = dealias((cs.Zap / absZap) * derivative(invZap));
      Field alt = iu * w - iu * re(w - hilbert(w));
      worst_theta = std::max(worst_theta, rel_linf(der.Theta, alt));
      Field Dom = dealias(invZap * derivative(cs.Zap / absZap));
      Field A1s = der.A1 + sigma * derivative(hilbert(Dom));
      double scale = 1.0 + linf(A1s);
      double resid = 0.0;
      for (int j = 0; j < g.N; ++j) resid = std::max(resid, std::abs(A1s[j].imag()));
      worst_a1s = std::max(worst_a1s, resid / scale);
      worst_a1 = std::max(worst_a1, std::max(0.0, 1.0 - min_real(der.A1)));
    }
    out.push_back({"theta_two_routes", worst_theta, 1e-9});
    out.push_back({"taylor_term_reality", worst_a1s, 1e-10});
    out.push_back({"a1_lower_bound", worst_a1, 1e-10});
  }

  // conformal round trip
  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      SurfaceState s;
      s.g = re(random_band_field(g, 10, rng, 0.1));
      s.v = re(random_band_field(g, 10, rng, 0.1));
      SurfaceState back = from_conformal(to_conformal(s));
      worst = std::max(worst, rel_linf(back.g, s.g));
      worst = std::max(worst, rel_linf(back.v, s.v));
    }
    out.push_back({"conformal_round_trip", worst, 1e-10});
  }

  // flat equilibrium of the full right-hand side
  {
    SurfaceState s;
    s.g = Field(g);
    s.v = Field(g);
    SimParams p;
    p.sigma = 0.5;
    p.gravity = 1;
    Rhs r = rhs(s, p);
    out.push_back({"flat_equilibrium", std::max(linf(r.gdot), linf(r.vdot)), 1e-13});
  }

  // one linear period returns the wave to its initial profile
  {
    int k = 2;
    double sigma = 0.5, A = 1e-5;
    SimParams p;
    p.sigma = sigma;
    p.gravity = 1;
    double period = 2.0 * pi / std::sqrt(k + sigma * k * k * k);
    int nsteps = 2000;
    p.dt = period / nsteps;
    SurfaceState s = gen_wave(A, k, g);
    SurfaceState cur = s;
    for (int n = 0; n < nsteps; ++n) cur = step_rk4(cur, p.dt, p);
    out.push_back({"dispersion_period_return", linf(cur.g - s.g), 1e-6});
  }

  // scaling map invariant
  {
    Grid g2 = make_grid(2 * cfg.N, cfg.L);
    SurfaceState s = gen_crest(CrestSpec{0.3, 0.5}, g);
    double sigma = 0.4;
    SurfaceState sc = scale_state_to(s, 2, g2);
    double base = std::cbrt(sigma) * linf(curvature(s));
    double scaled = std::cbrt(sigma / 8.0) * linf(curvature(sc));
    out.push_back({"scaling_invariant", std::abs(scaled - base) / base, 1e-8});
  }

  return out;
}

int cmd_validate(const Config& cfg, bool inject_fault) {
  std::vector<SuiteResult> results = run_validate_suites(cfg, inject_fault);
  bool all = true;
  for (const SuiteResult& r : results) {
    all = all && r.pass();
    std::cout << (r.pass() ? "PASS" : "FAIL") << " " << r.name
              << " residual=" << g6(r.residual) << " tol=" << g6(r.tol) << "\n";
  }
  std::cout << (all ? "validate: all suites passed" : "validate: FAILURES present") << "\n";
  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// studies

std::ofstream open_csv(const Config& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  std::string path = (std::filesystem::path(cfg.out_dir) / name).string();
  std::ofstream out(path);
  if (!out) throw ConfigError("study: cannot open " + path);
  std::cout << "writing " << path << "\n";
  return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int study_convergence(const Config& cfg) {
  SimParams p = cfg.params;
  double sigma = p.sigma;
  int gravity = p.gravity;
  SurfaceState s0 = build_initial(cfg, &sigma, &gravity);
  p.sigma = sigma;
  p.gravity = gravity;
  p.output_every = 1 << 30;
  if (cfg.dt_list.size() < 2) throw ConfigError("study: dt_list needs at least two entries");
  for (double dt : cfg.dt_list)
    if (!(dt > 0.0)) throw ConfigError("study: dt_list entries must be positive");

  double dt_min = cfg.dt_list.back();
  for (double dt : cfg.dt_list) dt_min = std::min(dt_min, dt);
  SimParams pref = p;
  pref.dt = dt_min / 4.0;
  SurfaceState ref = evolve(s0, pref).points.back().state;

  std::ofstream csv = open_csv(cfg, "study_convergence.csv");
  csv << "dt,err,order_fit\n";
  std::vector<double> lx, ly;
  for (double dt : cfg.dt_list) {
    SimParams pr = p;
    pr.dt = dt;
    SurfaceState end = evolve(s0, pr).points.back().state;
    double err = l2(end.g - ref.g) + l2(end.v - ref.v);
    lx.push_back(std::log(dt));
    ly.push_back(std::log(err));
    csv << detail::fmt17(dt) << "," << detail::fmt17(err) << ",\n";
  }
  double slope = fit_slope(lx, ly);
  csv << ",," << detail::fmt17(slope) << "\n";
  std::cout << "convergence: fitted order = " << g6(slope) << "\n";
  return 0;
}

int study_crest_scaling(const Config& cfg) {
  double nu = cfg.nu.value_or(0.3);
  Grid g = make_grid(cfg.N, cfg.L);
  std::ofstream csv = open_csv(cfg, "study_crest_scaling.csv");
  csv << "eps,kappa_linf,closed_form\n";
  std::vector<double> lx, ly;
  for (double eps : cfg.eps_list) {
    SurfaceState s = gen_crest(CrestSpec{nu, eps, cfg.alpha0}, g);
    double kap = linf(curvature(s));
    double closed = (1.0 - nu) * std::exp(-eps) * std::pow(1.0 - std::exp(-eps), -nu);
    lx.push_back(std::log(eps));
    ly.push_back(std::log(kap));
    csv << detail::fmt17(eps) << "," << detail::fmt17(kap) << "," << detail::fmt17(closed)
        << "\n";
  }
  double slope = fit_slope(lx, ly);
  csv << ",," << detail::fmt17(slope) << "\n";
  std::cout << "crest_scaling: fitted slope = " << g6(slope) << " (target " << g6(-nu)
            << ")\n";
  return 0;
}

int study_mollifier_delta(const Config& cfg) {
  SimParams p = cfg.params;
  double sigma = p.sigma;
  int gravity = p.gravity;
  SurfaceState s0 = build_initial(cfg, &sigma, &gravity);
  p.sigma = sigma;
  p.gravity = gravity;
  if (!(p.dt > 0.0)) throw ConfigError("study: mollifier_delta needs an explicit dt");

  std::ofstream csv = open_csv(cfg, "study_mollifier_delta.csv");
  csv << "delta,sup_deltaE\n";
  double prev = -1.0;
  bool monotone = true;
  for (double delta : cfg.delta_list) {
    SimParams pa = p, pb = p;
    pa.delta = delta;
    pb.delta = delta / 2.0;
    Trajectory ta = evolve(s0, pa);
    Trajectory tb = evolve(s0, pb);
    size_t n = std::min(ta.points.size(), tb.points.size());
    double sup = 0.0;
    for (size_t i = 0; i < n; ++i)
      sup = std::max(sup, energy_delta(ta.points[i].state, tb.points[i].state, p.sigma,
                                       p.dealias_fraction)
                              .total);
    if (prev >= 0.0 && sup > prev) monotone = false;
    csv << detail::fmt17(delta) << "," << detail::fmt17(sup) << "\n";
    prev = sup;
  }
  std::cout << "mollifier_delta: sup_t deltaE "
            << (monotone ? "decreases monotonically" : "NOT monotone") << " in delta\n";
  return 0;
}

int study_scale_symmetry(const Config& cfg) {
  if (cfg.params.gravity != 0)
    throw ConfigError("study: scale_symmetry requires params.gravity = 0");
  int lambda = cfg.lambda;
  if (lambda < 2) throw ConfigError("study: lambda must be >= 2");
  SimParams p = cfg.params;
  double sigma = p.sigma;
  int gravity = p.gravity;
  SurfaceState s0 = build_initial(cfg, &sigma, &gravity);
  p.sigma = sigma;
  p.gravity = gravity;
  if (!(p.dt > 0.0)) throw ConfigError("study: scale_symmetry needs an explicit dt");

  Grid big = make_grid(lambda * cfg.N, cfg.L);
  SurfaceState s0_scaled = scale_state_to(s0, lambda, big);
  SimParams ps = p;
  ps.sigma = p.sigma / (static_cast<double>(lambda) * lambda * lambda);

  Trajectory base = evolve(s0, p);
  Trajectory scaled = evolve(s0_scaled, ps);
  size_t n = std::min(base.points.size(), scaled.points.size());

  std::ofstream csv = open_csv(cfg, "study_scale_symmetry.csv");
  csv << "t,mismatch,s13kappa_base,s13kappa_scaled\n";
  double sup_mismatch = 0.0, sup_kappa_gap = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const SurfaceState& sb = base.points[i].state;
    const SurfaceState& ss = scaled.points[i].state;
    SurfaceState mapped = scale_state_to(sb, lambda, big);
    double denom = l2(ss.g) + l2(ss.v) + 1e-300;
    double mis = (l2(mapped.g - ss.g) + l2(mapped.v - ss.v)) / denom;
    double ka = std::cbrt(p.sigma) * linf(curvature(sb));
    double kb = std::cbrt(ps.sigma) * linf(curvature(ss));
    sup_mismatch = std::max(sup_mismatch, mis);
    sup_kappa_gap = std::max(sup_kappa_gap, std::abs(ka - kb));
    csv << detail::fmt17(sb.t) << "," << detail::fmt17(mis) << "," << detail::fmt17(ka)
        << "," << detail::fmt17(kb) << "\n";
  }
  std::cout << "scale_symmetry: sup mismatch = " << g6(sup_mismatch)
            << ", sup |s13kappa gap| = " << g6(sup_kappa_gap) << "\n";
  return 0;
}

int cmd_study(const Config& cfg, const std::string& which) {
  if (which == "convergence") return study_convergence(cfg);
  if (which == "crest_scaling") return study_crest_scaling(cfg);
  if (which == "mollifier_delta") return study_mollifier_delta(cfg);
  if (which == "scale_symmetry") return study_scale_symmetry(cfg);
  throw ConfigError("study: unknown study '" + which +
                    "' (convergence|crest_scaling|mollifier_delta|scale_symmetry)");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    Args a = parse_args(argc, argv);
    Config cfg = make_config(a);
    if (a.command == "gen") return cmd_gen(cfg);
    if (a.command == "simulate") return cmd_simulate(cfg);
    if (a.command == "validate") return cmd_validate(cfg, a.inject_fault);
    if (a.command == "study") {
      if (a.study.empty()) throw ConfigError("study: --study=NAME is required");
      return cmd_study(cfg, a.study);
    }
    throw ConfigError("unknown command '" + a.command + "'");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 4;
  }
}
