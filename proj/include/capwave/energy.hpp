#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "state.hpp"

namespace capwave {

inline double sq(double x) { return x * x; }

/// Sobolev norm sqrt(L sum_k (1 + xi_k^2)^s |fhat_k|^2).
inline double sobolev_norm(const Field& f, double s) {
  if (!(s >= 0.0)) throw ConfigError("sobolev_norm: order must be >= 0");
  std::vector<cplx> hat = spectrum(f);
  double acc = 0.0;
  for (int m = 0; m < f.size(); ++m) {
    double xi = f.grid.xi_of_slot(m);
    acc += std::pow(1.0 + xi * xi, s) * std::norm(hat[static_cast<size_t>(m)]);
  }
  return std::sqrt(f.grid.L * acc);
}

/// Homogeneous half norm sqrt(L sum_k |xi_k| |fhat_k|^2).
inline double hhalf_norm(const Field& f) {
  std::vector<cplx> hat = spectrum(f);
  double acc = 0.0;
  for (int m = 0; m < f.size(); ++m)
    acc += std::abs(f.grid.xi_of_slot(m)) * std::norm(hat[static_cast<size_t>(m)]);
  return std::sqrt(f.grid.L * acc);
}

namespace detail {

inline Field cpow(const Field& c, double p) {
  return map(c, [p](cplx z) { return cplx(std::pow(z.real(), p), 0.0); });
}

inline Field sqrt_clamped(const Field& f) {
  return map(f, [](cplx z) { return cplx(std::sqrt(std::max(z.real(), 0.0)), 0.0); });
}

}  // namespace capwave::detail

/// The two-tier diagnostic energy built on the conformal variables.
struct CalEnergy {
  double e1 = 0.0;
  double e2 = 0.0;
  double total = 0.0;
};

inline CalEnergy energy_calE_sigma(const SurfaceState& s, double sigma,
                                   double fraction = 2.0 / 3.0) {
  if (!(sigma >= 0.0)) throw ConfigError("energy_calE_sigma: sigma must be >= 0");
  Field hg = hilbert(s.g);
  Field logZap = iu * (s.g + hg);
  auto zp = [&](double p) { return exp(p * logZap); };
  Field c = detail::conformal_factor(s.g);

  Field invZap = zp(-1.0);
  Field du = derivative(invZap);
  Field d2u = derivative(du);
  Field d3u = derivative(d2u);

  Field cdg = dealias(c * derivative(s.g), fraction);
  Field Theta = cdg + hilbert(cdg);
  Field dTheta = derivative(Theta);

  ConformalState cs = to_conformal(s, fraction);
  Field w = derivative(conj(cs.Zt));  // Zbar_{t,a'}
  Field dw = derivative(w);
  Field d2w = derivative(dw);

  CalEnergy out;
  out.e1 = sq(l2(du)) + sq(hhalf_norm(dealias(invZap * du, fraction))) +
           sq(sigma) * sq(hhalf_norm(dTheta)) +
           sigma * std::pow(l2(dealias(zp(0.5) * du, fraction)), 6.0) +
           sigma * sq(linf(zp(0.5) * du)) +
           sigma * sq(l2(dealias(zp(-0.5) * d2u, fraction))) +
           sigma * sq(hhalf_norm(dealias(zp(-1.5) * d2u, fraction))) +
           sq(sigma) * sq(l2(dealias(invZap * d3u, fraction))) +
           sq(sigma) * sq(hhalf_norm(dealias(zp(-2.0) * d3u, fraction)));
  out.e2 = sq(l2(w)) + sq(l2(dealias(zp(-2.0) * dw, fraction))) +
           sigma * sq(l2(dealias(zp(-0.5) * dw, fraction))) +
           sigma * sq(l2(dealias(zp(-2.5) * d2w, fraction)));
  out.total = out.e1 + out.e2;
  return out;
}

/// The graded a-priori energy; every term is instantaneous, material
/// derivatives are closed algebraically through the evolution equations.
struct EEnergy {
  double e[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  double total = 0.0;
};

inline EEnergy energy_E_sigma(const SurfaceState& s, double sigma, int gravity,
                              double fraction = 2.0 / 3.0) {
  if (!(sigma >= 0.0)) throw ConfigError("energy_E_sigma: sigma must be >= 0");
  DerivedFields der = derive(s, sigma, gravity, fraction);
  const Field& c = der.c;
  Field hg = hilbert(s.g);
  Field logZap = iu * (s.g + hg);
  auto zp = [&](double p) { return exp(p * logZap); };
  Field Zap = zp(1.0);
  Field invZap = zp(-1.0);

  Field du = derivative(invZap);
  Field d2u = derivative(du);
  Field kappa = re(der.Theta);
  Field dTheta = derivative(der.Theta);
  Field w = derivative(conj(der.d));  // Zbar_{t,a'}
  Field dw = derivative(w);
  Field sqrtA1 = detail::sqrt_clamped(der.A1);
  cplx ig{0.0, static_cast<double>(gravity)};

  // closures from the fundamental equation
  Field Ztt = (-1.0 * iu) * dealias(der.A1 * invZap, fraction) +
              sigma * dealias(invZap * dTheta, fraction) + ig;
  Field DtW = derivative(Ztt) - dealias(derivative(der.b) * w, fraction);
  Field DbarZt = dealias(conj(invZap) * w, fraction);
  Field G = dealias(c * derivative(DbarZt), fraction) + iu * dealias(kappa * DbarZt, fraction);
  Field DtTheta = iu * G - iu * re(G - hilbert(G)) +
                  iu * im(commutator_hilbert(der.b, dTheta, fraction));
  Field DtDbarZt = dealias(conj(invZap) * derivative(Ztt), fraction) -
                   dealias(DbarZt * DbarZt, fraction);
  Field absD_DbarZt = dealias(c * derivative(DbarZt), fraction);

  EEnergy out;
  out.e[0] = sigma * sq(linf(detail::cpow(c, -0.5) * du)) +
             sigma * std::pow(l2(dealias(detail::cpow(c, -0.5) * du, fraction)), 6.0) +
             sq(l2(du)) +
             sigma * sq(l2(dealias(detail::cpow(c, 0.5) * d2u, fraction)));
  out.e[1] = sq(hhalf_norm(dealias((Ztt - ig) * Zap, fraction))) +
             sq(l2(dealias(sqrtA1 * w, fraction))) +
             sigma * sq(l2(dealias(detail::cpow(c, 0.5) * dw, fraction)));
  out.e[2] = sq(l2(DtW)) + sq(hhalf_norm(dealias(sqrtA1 * w * c, fraction))) +
             sigma * sq(hhalf_norm(dealias(detail::cpow(c, 1.5) * dw, fraction)));
  out.e[3] = sq(l2(DtTheta)) + sq(hhalf_norm(dealias(sqrtA1 * der.Theta * c, fraction))) +
             sigma * sq(hhalf_norm(dealias(detail::cpow(c, 1.5) * dTheta, fraction)));
  out.e[4] = sq(hhalf_norm(DtDbarZt)) + sq(l2(dealias(sqrtA1 * absD_DbarZt, fraction))) +
             sigma * sq(l2(dealias(detail::cpow(c, 0.5) * derivative(absD_DbarZt), fraction)));
  out.total = out.e[0] + out.e[1] + out.e[2] + out.e[3] + out.e[4];
  return out;
}

/// Solver-side Sobolev energies on (g, v):
/// index 0 is the H^{2.5} x H^2 level, index 1 + i the weighted
/// (c d/da)^{3+i} levels for i = 0..n_extra.
inline std::vector<double> energy_solver(const SurfaceState& s, double sigma, int n_extra = 0,
                                         double fraction = 2.0 / 3.0) {
  if (n_extra < 0) throw ConfigError("energy_solver: n_extra must be >= 0");
  DerivedFields der = derive(s, sigma, 1, fraction);
  const Field& c = der.c;
  Field chalf_inv = detail::cpow(c, -0.5);
  auto cd = [&](const Field& f) { return dealias(c * derivative(f), fraction); };

  std::vector<double> out;
  out.push_back(0.5 * sq(sobolev_norm(s.g, 2.5)) + 0.5 * sq(sobolev_norm(s.v, 2.0)));
  Field X = s.g;
  Field Y = s.v;
  for (int m = 0; m < 3; ++m) {
    X = cd(X);
    Y = cd(Y);
  }
  for (int i = 0; i <= n_extra; ++i) {
    Field diff = Y - dealias(der.a * X, fraction);
    out.push_back(0.5 * sq(l2(dealias(chalf_inv * diff, fraction))) +
                  0.5 * sigma * sq(hhalf_norm(X)));
    if (i < n_extra) {
      X = cd(X);
      Y = cd(Y);
    }
  }
  return out;
}

/// Distance energy between two states at the same time on the same grid.
/// Weights come from the first argument; the functional is asymmetric.
struct DeltaEnergy {
  double d2 = 0.0;
  double d2_5 = 0.0;
  double d3 = 0.0;
  double total = 0.0;
};

inline DeltaEnergy energy_delta(const SurfaceState& s1, const SurfaceState& s2, double sigma,
                                double fraction = 2.0 / 3.0) {
  require_same_grid(s1.g, s2.g, "energy_delta");
  if (std::abs(s1.t - s2.t) > 1e-10 * std::max(1.0, std::abs(s1.t)))
    throw ConfigError("energy_delta: states must be at the same time");
  DerivedFields der1 = derive(s1, sigma, 1, fraction);
  DerivedFields der2 = derive(s2, sigma, 1, fraction);
  Field chalf_inv = detail::cpow(der1.c, -0.5);
  auto cd = [&](const Field& c, const Field& f) { return dealias(c * derivative(f), fraction); };

  DeltaEnergy out;
  out.d2 = 0.5 * sq(sobolev_norm(s1.g - s2.g, 1.0)) + sq(sobolev_norm(s1.v - s2.v, 0.5));
  out.d2_5 = 0.5 * sq(l2(dealias(chalf_inv * cd(der1.c, s1.v - s2.v), fraction))) +
             0.5 * sigma * sq(hhalf_norm(cd(der1.c, s1.g - s2.g)));
  Field Pv = cd(der1.c, s1.v) - cd(der2.c, s2.v);
  Field Pg = cd(der1.c, s1.g) - cd(der2.c, s2.g);
  Field zeta = fractional_deriv(Pv, 0.5) -
               dealias(der1.a * fractional_deriv(Pg, 0.5), fraction);
  Field Qg = cd(der1.c, cd(der1.c, s1.g)) - cd(der2.c, cd(der2.c, s2.g));
  out.d3 = 0.5 * sq(l2(zeta)) + 0.5 * sigma * sq(l2(dealias(chalf_inv * Qg, fraction)));
  out.total = out.d2 + out.d2_5 + out.d3;
  return out;
}

/// Pointwise-control norm pair used by the estimate machinery.
struct WCNorms {
  double w = 0.0;
  double c = 0.0;
};

inline WCNorms wc_norms(const Field& f, const SurfaceState& s, double fraction = 2.0 / 3.0) {
  require_same_grid(f, s.g, "wc_norms");
  Field cfac = detail::conformal_factor(s.g);
  WCNorms out;
  out.w = linf(f) + l2(dealias(cfac * derivative(f), fraction));
  out.c = hhalf_norm(f) +
          (1.0 + l2(derivative(cfac))) * l2(map2(f, cfac, [](cplx a, cplx b) { return a / b; }));
  return out;
}

/// Taylor-sign field A_{1,sigma} / |Z_a'| = (A_1 + sigma |d/da| kappa) c.
inline Field taylor_field(const SurfaceState& s, double sigma, int gravity = 1,
                          double fraction = 2.0 / 3.0) {
  DerivedFields der = derive(s, sigma, gravity, fraction);
  Field kappa = re(der.Theta);
  Field A1s = der.A1 + sigma * fractional_deriv(kappa, 1.0);
  return re(A1s * der.c);
}

/// Sobolev-level blow-up functional: finite exactly while the solution can
/// be continued at this regularity.
inline double blowup_quantity(const SurfaceState& s, double fraction = 2.0 / 3.0) {
  Field hg = hilbert(s.g);
  Field logZap = iu * (s.g + hg);
  Field Zap = exp(logZap);
  Field invZap = exp(-1.0 * logZap);
  ConformalState cs = to_conformal(s, fraction);
  return sobolev_norm(Zap - cplx{1.0, 0.0}, 3.5) +
         sobolev_norm(invZap - cplx{1.0, 0.0}, 3.5) + sobolev_norm(cs.Zt, 3.0);
}

/// One row of trajectory diagnostics.
struct EnergyReport {
  double t = 0.0;
  double E_sigma[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  double E_sigma_total = 0.0;
  double calE_1 = 0.0;
  double calE_2 = 0.0;
  double calE_total = 0.0;
  std::vector<double> solver_E;  // E_{3.5}, E_{4.5 + i}
  double A1_min = 0.0;
  double curvature_linf = 0.0;
  double sigma13_kappa = 0.0;
  double taylor_min = 0.0;
  double blowup_q = 0.0;
  double residual_fundamental = std::numeric_limits<double>::quiet_NaN();
};

inline EnergyReport make_report(const SurfaceState& s, double sigma, int gravity,
                                int n_extra = 0, double fraction = 2.0 / 3.0) {
  EnergyReport r;
  r.t = s.t;
  EEnergy E = energy_E_sigma(s, sigma, gravity, fraction);
  for (int i = 0; i < 5; ++i) r.E_sigma[i] = E.e[i];
  r.E_sigma_total = E.total;
  CalEnergy C = energy_calE_sigma(s, sigma, fraction);
  r.calE_1 = C.e1;
  r.calE_2 = C.e2;
  r.calE_total = C.total;
  r.solver_E = energy_solver(s, sigma, n_extra, fraction);
  DerivedFields der = derive(s, sigma, gravity, fraction);
  r.A1_min = min_real(der.A1);
  Field kappa = re(der.Theta);
  r.curvature_linf = linf(kappa);
  r.sigma13_kappa = std::cbrt(sigma) * r.curvature_linf;
  r.taylor_min = min_real(taylor_field(s, sigma, gravity, fraction));
  r.blowup_q = blowup_quantity(s, fraction);
  return r;
}

/// Centered-difference residual of the fundamental equation
/// D_t Zbar_t = gravity i - i A_1 / Z_a' + sigma D_a' Theta
/// across three consecutive trajectory states.
inline double residual_fundamental(const SurfaceState& prev, const SurfaceState& cur,
                                   const SurfaceState& next, double sigma, int gravity,
                                   double fraction = 2.0 / 3.0) {
  require_same_grid(prev.g, cur.g, "residual_fundamental");
  require_same_grid(next.g, cur.g, "residual_fundamental");
  double span = next.t - prev.t;
  if (!(span > 0.0)) throw ConfigError("residual_fundamental: times must increase");
  DerivedFields der = derive(cur, sigma, gravity, fraction);
  Field dbar_prev = conj(to_conformal(prev, fraction).Zt);
  Field dbar_next = conj(to_conformal(next, fraction).Zt);
  Field lhs = (1.0 / span) * (dbar_next - dbar_prev) +
              dealias(der.b * derivative(conj(der.d)), fraction);
  Field hg = hilbert(cur.g);
  Field invZap = exp(-1.0 * iu * (cur.g + hg));
  Field rhs = (-1.0 * iu) * dealias(der.A1 * invZap, fraction) +
              sigma * dealias(invZap * derivative(der.Theta), fraction) +
              cplx{0.0, static_cast<double>(gravity)};
  return l2(lhs - rhs) / (l2(rhs) + 1e-300);
}

}  // namespace capwave
