#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "energy.hpp"

namespace capwave {

struct SimParams {
  double sigma = 0.0;
  int gravity = 1;
  double delta = 0.0;      // Gaussian mollifier width (0: unmollified)
  double eps_visc = 0.0;   // half-derivative viscosity coefficient
  double dt = 0.0;         // <= 0: pick by CFL every step
  double T = 0.0;
  double dealias_fraction = 2.0 / 3.0;
  double cfl = 0.5;
  int output_every = 1;
  double blowup_ceiling = 1e6;
  int n_extra = 0;  // extra solver-energy levels in reports
};

inline void validate_params(const SimParams& p) {
  if (!(p.sigma >= 0.0)) throw ConfigError("params: sigma must be >= 0");
  if (p.gravity != 0 && p.gravity != 1) throw ConfigError("params: gravity must be 0 or 1");
  if (!(p.delta >= 0.0)) throw ConfigError("params: delta must be >= 0");
  if (!(p.eps_visc >= 0.0)) throw ConfigError("params: eps_visc must be >= 0");
  if (!(p.T >= 0.0)) throw ConfigError("params: T must be >= 0");
  if (!(p.dealias_fraction > 0.0) || p.dealias_fraction > 1.0)
    throw ConfigError("params: dealias fraction must lie in (0, 1]");
  if (!(p.cfl > 0.0)) throw ConfigError("params: cfl must be > 0");
  if (p.output_every < 1) throw ConfigError("params: output_every must be >= 1");
  if (!(p.blowup_ceiling > 0.0)) throw ConfigError("params: blowup ceiling must be > 0");
  if (p.n_extra < 0) throw ConfigError("params: n_extra must be >= 0");
}

struct Rhs {
  Field gdot, vdot;
};

/// Right-hand side of the evolution system:
///   g_t = -(c d)v + a (c d)g - b g'
///   v_t = -i sigma H (c d)^2 g - a (c d)v - b v' + a^2 (c d)g + e2
/// with (c d) = c d/da. Both components are real; the imaginary residue is
/// asserted small and dropped.
inline Rhs rhs(const SurfaceState& s, const SimParams& p) {
  double fr = p.dealias_fraction;
  DerivedFields der = derive(s, p.sigma, p.gravity, fr);
  Field dg = derivative(s.g);
  Field dv = derivative(s.v);
  Field cg = dealias(der.c * dg, fr);
  Field cv = dealias(der.c * dv, fr);

  Field gdot = -1.0 * cv + dealias(der.a * cg, fr) - dealias(der.b * dg, fr);

  Field c2g = dealias(der.c * derivative(cg), fr);
  Field a2 = dealias(der.a * der.a, fr);
  Field vdot = (-1.0 * iu * p.sigma) * hilbert(c2g) - dealias(der.a * cv, fr) -
               dealias(der.b * dv, fr) + dealias(a2 * cg, fr) + der.e2;

  return Rhs{realize(gdot, 1e-11, "rhs: gdot"), realize(vdot, 1e-11, "rhs: vdot")};
}

/// Mollified right-hand side: the full nonlinearity is filtered through the
/// squared Gaussian mollifier and the v equation gains the half-derivative
/// viscosity -eps_visc |d/da| v. delta = eps_visc = 0 reduces to rhs exactly.
inline Rhs rhs_mollified(const SurfaceState& s, const SimParams& p) {
  Rhs r = rhs(s, p);
  if (p.delta > 0.0) {
    r.gdot = mollify(mollify(r.gdot, p.delta), p.delta);
    r.vdot = mollify(mollify(r.vdot, p.delta), p.delta);
  }
  if (p.eps_visc > 0.0) r.vdot = r.vdot - p.eps_visc * fractional_deriv(s.v, 1.0);
  return r;
}

enum class RhsKind { exact, mollified };

/// One classical RK4 step of size dt.
inline SurfaceState step_rk4(const SurfaceState& s, double dt, const SimParams& p,
                             RhsKind kind = RhsKind::exact) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("step_rk4: dt must be positive");
  auto F = [&](const SurfaceState& x) {
    return kind == RhsKind::exact ? rhs(x, p) : rhs_mollified(x, p);
  };
  auto at = [&](double frac_dt, const Rhs& k) {
    SurfaceState x;
    x.t = s.t + frac_dt;
    x.g = s.g + frac_dt * k.gdot;
    x.v = s.v + frac_dt * k.vdot;
    return x;
  };
  Rhs k1 = F(s);
  Rhs k2 = F(at(0.5 * dt, k1));
  Rhs k3 = F(at(0.5 * dt, k2));
  Rhs k4 = F(at(dt, k3));
  SurfaceState out;
  out.t = s.t + dt;
  out.g = s.g + (dt / 6.0) * (k1.gdot + 2.0 * k2.gdot + 2.0 * k3.gdot + k4.gdot);
  out.v = s.v + (dt / 6.0) * (k1.vdot + 2.0 * k2.vdot + 2.0 * k3.vdot + k4.vdot);
  if (!is_finite(out.g) || !is_finite(out.v))
    throw NumericalError("step_rk4: non-finite state, integration failure");
  return out;
}

/// Stable step from the linear dispersion bound omega_max = sqrt(gravity
/// xi C + sigma xi^3 C^3) at the top resolved mode (RK4 imaginary-axis
/// stability radius 2.8), combined with an advective bound.
inline double cfl_dt(const SurfaceState& s, const SimParams& p) {
  DerivedFields der = derive(s, p.sigma, p.gravity, p.dealias_fraction);
  double C = max_real(der.c);
  double xim = s.g.grid.xi_max();
  double om2 = p.gravity * xim * C + p.sigma * xim * xim * xim * C * C * C;
  double inf = std::numeric_limits<double>::infinity();
  double dt1 = om2 > 0.0 ? p.cfl * 2.8 / std::sqrt(om2) : inf;
  double adv = 0.0;
  for (int j = 0; j < s.g.size(); ++j)
    adv = std::max(adv, std::abs(der.b[j]) + std::abs(der.a[j] * der.c[j]));
  double dt2 = adv > 0.0 ? p.cfl * s.g.grid.dx() / adv : inf;
  double dt = std::min(dt1, dt2);
  if (!std::isfinite(dt))
    throw ConfigError("cfl_dt: state has no dynamics, specify dt explicitly");
  return dt;
}

enum class EvolveStatus { ok, blowup };

struct Checkpoint {
  SurfaceState state;
  EnergyReport report;
};

struct Trajectory {
  SimParams params;
  std::vector<Checkpoint> points;
  EvolveStatus status = EvolveStatus::ok;
  std::string provenance;
};

using CheckpointSink = std::function<void(const Checkpoint&)>;

/// Integrate from the initial state to t0 + T, recording a checkpoint with a
/// full energy report every output_every steps (plus the initial and final
/// states). A blowup_quantity above the ceiling aborts with status blowup;
/// the offending checkpoint is kept as the last recorded state. After the
/// run, interior checkpoints receive the centered-difference residual of the
/// fundamental equation.
inline Trajectory evolve(const SurfaceState& initial, const SimParams& p,
                         const CheckpointSink& sink = {}) {
  validate_params(p);
  require_same_grid(initial.g, initial.v, "evolve");
  Trajectory traj;
  traj.params = p;
  RhsKind kind = (p.delta > 0.0 || p.eps_visc > 0.0) ? RhsKind::mollified : RhsKind::exact;
  double tend = initial.t + p.T;
  double tol = 1e-12 * std::max(1.0, std::abs(tend));

  SurfaceState s = initial;
  bool exceeded = false;
  auto record = [&](const SurfaceState& st) {
    Checkpoint cp{st, make_report(st, p.sigma, p.gravity, p.n_extra, p.dealias_fraction)};
    traj.points.push_back(std::move(cp));
    if (traj.points.back().report.blowup_q > p.blowup_ceiling) exceeded = true;
  };

  record(s);
  long step = 0;
  while (!exceeded && s.t < tend - tol) {
    double dt = p.dt > 0.0 ? p.dt : cfl_dt(s, p);
    if (s.t + dt > tend) dt = tend - s.t;
    s = step_rk4(s, dt, p, kind);
    ++step;
    if (step % p.output_every == 0 || s.t >= tend - tol) record(s);
  }
  if (exceeded) traj.status = EvolveStatus::blowup;

  for (size_t i = 1; i + 1 < traj.points.size(); ++i)
    traj.points[i].report.residual_fundamental =
        residual_fundamental(traj.points[i - 1].state, traj.points[i].state,
                             traj.points[i + 1].state, p.sigma, p.gravity, p.dealias_fraction);
  if (sink)
    for (const Checkpoint& cp : traj.points) sink(cp);
  return traj;
}

namespace detail {

// periodic 4-point Lagrange interpolation of a real field
inline double interp_periodic(const Field& f, double x) {
  int N = f.size();
  double sdx = x / f.grid.dx();
  double fl = std::floor(sdx);
  double u = sdx - fl;
  long j0 = static_cast<long>(fl);
  auto val = [&](long j) {
    long m = ((j % N) + N) % N;
    return f[static_cast<int>(m)].real();
  };
  double wm1 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  double w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  double w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  double w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return wm1 * val(j0 - 1) + w0 * val(j0) + w1 * val(j0 + 1) + w2 * val(j0 + 2);
}

}  // namespace capwave::detail

/// Follow the coordinate change dh/dt = b(h, t) along a trajectory from
/// h(t0) = alpha0: RK4 in time over each checkpoint interval with the
/// transport field interpolated cubically in space and linearly in time.
/// Returns (t, h) at every checkpoint.
inline std::vector<std::pair<double, double>> lagrangian_map(const Trajectory& traj,
                                                             double alpha0, int nsub = 8) {
  if (traj.points.empty()) throw ConfigError("lagrangian_map: empty trajectory");
  if (nsub < 1) throw ConfigError("lagrangian_map: nsub must be >= 1");
  const SimParams& p = traj.params;
  std::vector<Field> bs;
  bs.reserve(traj.points.size());
  for (const Checkpoint& cp : traj.points)
    bs.push_back(derive(cp.state, p.sigma, p.gravity, p.dealias_fraction).b);

  std::vector<std::pair<double, double>> out;
  double h = alpha0;
  out.emplace_back(traj.points[0].state.t, h);
  for (size_t i = 0; i + 1 < traj.points.size(); ++i) {
    double t0 = traj.points[i].state.t, t1 = traj.points[i + 1].state.t;
    auto bval = [&](double x, double t) {
      double th = (t - t0) / (t1 - t0);
      return (1.0 - th) * detail::interp_periodic(bs[i], x) +
             th * detail::interp_periodic(bs[i + 1], x);
    };
    double dts = (t1 - t0) / nsub;
    double t = t0;
    for (int m = 0; m < nsub; ++m) {
      double k1 = bval(h, t);
      double k2 = bval(h + 0.5 * dts * k1, t + 0.5 * dts);
      double k3 = bval(h + 0.5 * dts * k2, t + 0.5 * dts);
      double k4 = bval(h + dts * k3, t + dts);
      h += dts / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += dts;
    }
    out.emplace_back(t1, h);
  }
  return out;
}

}  // namespace capwave
