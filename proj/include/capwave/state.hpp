#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "brackets.hpp"

namespace capwave {

/// Phase-space representation of the free surface: g is the boundary angle
/// variable (log Z_a' = i(I+H)g), v the real velocity variable. Both real.
struct SurfaceState {
  double t = 0.0;
  Field g;
  Field v;
};

/// Algebraic closure of the evolution system at one instant.
struct DerivedFields {
  Field c;      // 1/|Z_a'| = exp(-H g), real positive
  Field omega;  // unit tangent exp(i g)
  Field b;      // transport coefficient, real
  Field a;      // real
  Field d;      // Z_t boundary value, antiholomorphic side
  Field A1;     // Taylor coefficient, real
  Field e2;     // forcing in the v equation, real
  Field Theta;  // (I+H)(c g'), Re Theta = curvature
};

/// Conformal boundary variables.
struct ConformalState {
  Field Zap;  // Z_a'
  Field Zt;   // Z_t
};

/// Parameters of the angled-crest initial data family.
struct CrestSpec {
  double nu = 0.3;      // interior half-angle / pi, in (0, 1/2)
  double eta = 0.1;     // regularization depth, >= 0
  double alpha0 = 0.0;  // crest location
};

namespace detail {

// exp(-H g) as a strictly real field; validates positivity / finiteness
inline Field conformal_factor(const Field& g) {
  Field hg = hilbert(g);  // purely imaginary for real g
  Field c = re(exp(-1.0 * iu * hg));
  if (!is_finite(c) || !(min_real(c) > 1e-10))
    throw NumericalError("derive: conformal factor underflow, ||H g|| too large");
  return c;
}

}  // namespace capwave::detail

/// Close the system: compute every coefficient field of the evolution
/// equations from (g, v). All quadratic products are dealiased.
inline DerivedFields derive(const SurfaceState& s, double sigma, int gravity,
                            double fraction = 2.0 / 3.0) {
  require_same_grid(s.g, s.v, "derive");
  Field c = detail::conformal_factor(s.g);
  Field omega = exp(iu * s.g);
  Field q = dealias(s.v / c, fraction);  // v / c feeds every projection below

  Field cv = dealias(c * s.v, fraction);
  Field c2 = dealias(c * c, fraction);
  Field b = realize(2.0 * iu * hilbert(cv) + iu * commutator_hilbert(c2, q, fraction),
                    1e-11, "derive: b");

  Field a = realize(iu * dealias(c * hilbert(q), fraction), 1e-11, "derive: a");

  // d = -i exp(i(I-H)g) (I-H)(v/c); exp(ig) c = exp(i(g - Hg))
  Field ee = exp(iu * (s.g - hilbert(s.g)));
  Field d = -1.0 * iu * dealias(ee * (q - hilbert(q)), fraction);

  // Taylor coefficient; the constant is the gravity contribution
  Field comm_dd = commutator_hilbert_deriv(d, conj(d), fraction);
  Field A1 = static_cast<double>(gravity) - im(comm_dd);

  Field cdg = dealias(c * derivative(s.g), fraction);
  Field Theta = cdg + hilbert(cdg);

  Field e2 = static_cast<double>(gravity) * re(omega) - dealias(A1 * c, fraction) +
             sigma * im(commutator_hilbert(c, derivative(Theta), fraction));

  return DerivedFields{std::move(c), std::move(omega), std::move(b), std::move(a),
                       std::move(d), std::move(A1), std::move(e2), std::move(Theta)};
}

/// Boundary values of the conformal derivative and velocity.
inline ConformalState to_conformal(const SurfaceState& s, double fraction = 2.0 / 3.0) {
  Field c = detail::conformal_factor(s.g);
  Field q = dealias(s.v / c, fraction);
  Field Zap = exp(iu * (s.g + hilbert(s.g)));
  Field ee = exp(iu * (s.g - hilbert(s.g)));
  Field Zt = -1.0 * iu * dealias(ee * (q - hilbert(q)), fraction);
  return ConformalState{std::move(Zap), std::move(Zt)};
}

/// Recover (g, v) from conformal samples. The angle is the unwrapped
/// pointwise argument of Z_a'; the closed loop must have winding number zero.
inline SurfaceState from_conformal(const ConformalState& cs) {
  require_same_grid(cs.Zap, cs.Zt, "from_conformal");
  const Field& Zap = cs.Zap;
  int N = Zap.size();
  if (!is_finite(Zap) || !is_finite(cs.Zt))
    throw ConfigError("from_conformal: non-finite samples");
  for (int j = 0; j < N; ++j)
    if (std::abs(Zap[j]) < 1e-300) throw ConfigError("from_conformal: Z_a' vanishes on the grid");

  Field g(Zap.grid);
  double phi = std::arg(Zap[0]);
  g[0] = phi;
  double loop = 0.0;
  for (int j = 1; j <= N; ++j) {
    double inc = std::arg(Zap[j % N] / Zap[j - 1]);
    loop += inc;
    if (j < N) {
      phi += inc;
      g[j] = phi;
    }
  }
  if (std::abs(loop) > 1e-6)
    throw ConfigError("from_conformal: nonzero winding number of Z_a'");

  Field omega(Zap.grid);
  for (int j = 0; j < N; ++j) omega[j] = Zap[j] / std::abs(Zap[j]);
  Field v = -1.0 * im(conj(omega) * cs.Zt);

  SurfaceState out;
  out.t = 0.0;
  out.g = std::move(g);
  out.v = std::move(v);
  return out;
}

/// Angled-crest initial data: Z_a' = (1 - e^{-eta} e^{-i(a - a0)})^(nu - 1),
/// at rest (Z_t = 0). eta > 0 regularizes; the exact crest eta = 0 exceeds
/// the dynamic-range guard and is rejected.
inline SurfaceState gen_crest(const CrestSpec& spec, const Grid& grid) {
  if (!(spec.nu > 0.0) || !(spec.nu < 0.5))
    throw ConfigError("gen_crest: nu must lie in (0, 1/2)");
  if (!(spec.eta >= 0.0)) throw ConfigError("gen_crest: eta must be >= 0");
  double base = 1.0 - std::exp(-spec.eta);
  double zap_peak = (base > 0.0) ? std::pow(base, spec.nu - 1.0)
                                 : std::numeric_limits<double>::infinity();
  if (!(zap_peak <= 1e8))
    throw ConfigError("gen_crest: |Z_a'| exceeds 1e8, eta too small for this family");

  ConformalState cs;
  cs.Zap = Field(grid);
  cs.Zt = Field(grid);
  for (int j = 0; j < grid.N; ++j) {
    cplx w = 1.0 - std::exp(-spec.eta) * std::exp(-iu * (grid.node(j) - spec.alpha0));
    cs.Zap[j] = std::pow(w, spec.nu - 1.0);
  }
  return from_conformal(cs);
}

/// Single-mode wave g = A cos(k a), v = 0.
inline SurfaceState gen_wave(double A, int k, const Grid& grid,
                             double fraction = 2.0 / 3.0) {
  if (k < 1) throw ConfigError("gen_wave: k must be a positive integer");
  int kc = static_cast<int>(std::floor(fraction * (grid.N / 2.0) + 1e-12));
  if (k > kc) throw ConfigError("gen_wave: k lies beyond the dealias band");
  SurfaceState s;
  s.g = sample(grid, [&](double al) { return A * std::cos(k * al); });
  s.v = Field(grid);
  return s;
}

/// Poisson-smooth a state at depth eps through the conformal variables.
/// Maps crest(nu, eta) to crest(nu, eta + eps) exactly.
inline SurfaceState mollify_state(const SurfaceState& s, double eps,
                                  double fraction = 2.0 / 3.0) {
  if (!(eps >= 0.0)) throw ConfigError("mollify_state: eps must be >= 0");
  if (eps == 0.0) return s;
  ConformalState cs = to_conformal(s, fraction);
  cs.Zap = poisson_smooth(cs.Zap, eps);
  cs.Zt = poisson_smooth(cs.Zt, eps);
  SurfaceState out = from_conformal(cs);
  out.t = s.t;
  return out;
}

/// Curvature in the conformal frame: kappa = c g' = Re Theta.
inline Field curvature(const SurfaceState& s, double fraction = 2.0 / 3.0) {
  Field c = detail::conformal_factor(s.g);
  return re(dealias(c * derivative(s.g), fraction));
}

/// Independent curvature route through the conformal variables:
/// Theta = i w - i Re((I-H) w) with w = (Z_a'/|Z_a'|) (1/Z_a')'.
inline Field curvature_conformal(const SurfaceState& s, double fraction = 2.0 / 3.0) {
  ConformalState cs = to_conformal(s, fraction);
  Field absZap = map(cs.Zap, [](cplx z) { return cplx(std::abs(z), 0.0); });
  Field omega = cs.Zap / absZap;
  Field invZap = map(cs.Zap, [](cplx z) { return 1.0 / z; });
  Field w = dealias(omega * derivative(invZap), fraction);
  Field Theta = iu * w - iu * re(w - hilbert(w));
  return re(Theta);
}

/// Rescale g_l(a) = g(l a), v_l = l^{-1} v(l a) by Fourier re-indexing on a
/// target grid; surface tension transforms as sigma -> sigma / l^3. Modes
/// pushed past the target band must carry no significant mass.
inline SurfaceState scale_state_to(const SurfaceState& s, int lambda, const Grid& target) {
  if (lambda < 1) throw ConfigError("scale_state: lambda must be a positive integer");
  if (std::abs(target.L - s.g.grid.L) > 1e-14 * s.g.grid.L)
    throw ConfigError("scale_state: target grid must keep the same period");
  auto push = [&](const Field& f, double amp) {
    std::vector<cplx> hat = spectrum(f);
    std::vector<cplx> out(static_cast<size_t>(target.N), cplx{0.0, 0.0});
    double dropped = 0.0, total = 0.0;
    for (int m = 0; m < f.size(); ++m) {
      int k = f.grid.k_of_slot(m);
      cplx zc = hat[static_cast<size_t>(m)];
      total += std::norm(zc);
      long kk = static_cast<long>(k) * lambda;
      if (kk < -target.N / 2 || kk > target.N / 2 - 1) {
        dropped += std::norm(zc);
        continue;
      }
      int slot = kk >= 0 ? static_cast<int>(kk) : static_cast<int>(kk) + target.N;
      out[static_cast<size_t>(slot)] = amp * zc;
    }
    if (dropped > 1e-16 * (total + 1e-300))
      throw NumericalError("scale_state: input not band-limited enough for this lambda");
    return from_spectrum(target, out);
  };
  SurfaceState out;
  out.t = s.t;
  out.g = re(push(s.g, 1.0));
  out.v = re(push(s.v, 1.0 / lambda));
  return out;
}

/// Same-grid scaling map; sigma_factor is the accompanying surface-tension
/// rule sigma -> sigma_factor * sigma.
struct ScaledState {
  SurfaceState state;
  double sigma_factor = 1.0;
};

inline ScaledState scale_state(const SurfaceState& s, double lambda) {
  double r = std::round(lambda);
  if (!(lambda > 0.0) || std::abs(lambda - r) > 1e-12 || r < 1.0)
    throw ConfigError("scale_state: lambda must be a positive integer on a periodic grid");
  int l = static_cast<int>(r);
  ScaledState out;
  out.state = scale_state_to(s, l, s.g.grid);
  out.sigma_factor = 1.0 / (static_cast<double>(l) * l * l);
  return out;
}

}  // namespace capwave
