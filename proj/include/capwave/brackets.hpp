#pragma once

#include "spectral.hpp"

namespace capwave {

/// Commutator [f, H] g = f (H g) - H (f g). Both products are dealiased
/// before and after the Hilbert transform touches them.
inline Field commutator_hilbert(const Field& f, const Field& g,
                                double fraction = 2.0 / 3.0) {
  require_same_grid(f, g, "commutator_hilbert");
  Field a = dealias(f * hilbert(g), fraction);
  Field b = hilbert(dealias(f * g, fraction));
  return a - b;
}

/// [f, H] g' : the commutator applied to the derivative of g. This is the
/// smoothing kernel the quasilinear structure leans on; it coincides with
/// the principal-value cotangent-kernel integral with difference quotients
/// of f inside.
inline Field commutator_hilbert_deriv(const Field& f, const Field& g,
                                      double fraction = 2.0 / 3.0) {
  return commutator_hilbert(f, derivative(g), fraction);
}

/// Triple bracket [h, f; g'] assembled from single commutators via
///   h ([f,H] g')' = [h f', H] g' + [f, H] (h g')' - [h, f; g'] ,
/// i.e. [h, f; g'] = [h f', H] g' + [f, H] (h g')' - h ([f,H] g')'.
/// Equals the double-difference-quotient kernel integral against g'.
inline Field triple_bracket_dg(const Field& h, const Field& f, const Field& g,
                               double fraction = 2.0 / 3.0) {
  require_same_grid(h, f, "triple_bracket_dg");
  require_same_grid(h, g, "triple_bracket_dg");
  Field df = derivative(f);
  Field dg = derivative(g);
  Field t1 = commutator_hilbert(dealias(h * df, fraction), dg, fraction);
  Field t2 = commutator_hilbert(f, derivative(dealias(h * dg, fraction)), fraction);
  Field t3 = dealias(h * derivative(commutator_hilbert(f, dg, fraction)), fraction);
  return t1 + t2 - t3;
}

}  // namespace capwave
