#pragma once

#include <cmath>

#include "grid.hpp"

namespace capwave {

/// Spectral derivative. The unpaired k = -N/2 mode is annihilated so the
/// operator maps real fields to real fields; the largest surviving
/// wavenumber is xi(N/2 - 1).
inline Field derivative(const Field& f) {
  return apply_symbol(f, [&](int k) -> cplx {
    if (k == -f.grid.N / 2) return {0.0, 0.0};
    return iu * f.grid.xi(k);
  });
}

/// Periodic Hilbert transform, symbol -sgn(xi). Annihilates constants and
/// maps real fields to purely imaginary ones.
inline Field hilbert(const Field& f) {
  return apply_symbol(f, [](int k) -> cplx {
    if (k == 0) return {0.0, 0.0};
    return {k > 0 ? -1.0 : 1.0, 0.0};
  });
}

/// |D|^s with symbol |xi|^s for s >= 0. s = 0 is the identity; for s > 0 the
/// mean is annihilated and the k = -N/2 mode is dropped to match the
/// derivative, so |D| = i H d/da holds exactly as multipliers.
inline Field fractional_deriv(const Field& f, double s) {
  if (!(s >= 0.0)) throw ConfigError("fractional_deriv: order must be >= 0");
  if (s == 0.0) return f;
  return apply_symbol(f, [&](int k) -> cplx {
    if (k == 0 || k == -f.grid.N / 2) return {0.0, 0.0};
    return {std::pow(std::abs(f.grid.xi(k)), s), 0.0};
  });
}

/// (I + H)/2: keeps k < 0 modes, halves the mean, kills k > 0.
inline Field project_holo(const Field& f) {
  return apply_symbol(f, [](int k) -> cplx {
    if (k == 0) return {0.5, 0.0};
    return {k < 0 ? 1.0 : 0.0, 0.0};
  });
}

/// (I - H)/2: keeps k > 0 modes, halves the mean, kills k < 0.
inline Field project_antiholo(const Field& f) {
  return apply_symbol(f, [](int k) -> cplx {
    if (k == 0) return {0.5, 0.0};
    return {k > 0 ? 1.0 : 0.0, 0.0};
  });
}

/// Poisson smoothing exp(-eps |xi|), the periodic harmonic extension
/// evaluated at depth eps. eps = 0 is the identity.
inline Field poisson_smooth(const Field& f, double eps) {
  if (!(eps >= 0.0)) throw ConfigError("poisson_smooth: eps must be >= 0");
  return apply_symbol(f, [&](int k) -> cplx {
    return {std::exp(-eps * std::abs(f.grid.xi(k))), 0.0};
  });
}

/// Gaussian mollifier exp(-(delta xi)^2 / 2). delta = 0 is the identity.
inline Field mollify(const Field& f, double delta) {
  if (!(delta >= 0.0)) throw ConfigError("mollify: delta must be >= 0");
  return apply_symbol(f, [&](int k) -> cplx {
    double z = delta * f.grid.xi(k);
    return {std::exp(-0.5 * z * z), 0.0};
  });
}

/// Zero every mode with |k| > fraction * N/2 (the 2/3 rule by default).
inline Field dealias(const Field& f, double fraction = 2.0 / 3.0) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw ConfigError("dealias: fraction must lie in (0, 1]");
  if (fraction == 1.0) return f;
  int kc = static_cast<int>(std::floor(fraction * (f.grid.N / 2.0) + 1e-12));
  return apply_symbol(f, [kc](int k) -> cplx {
    return {std::abs(k) <= kc ? 1.0 : 0.0, 0.0};
  });
}

}  // namespace capwave
