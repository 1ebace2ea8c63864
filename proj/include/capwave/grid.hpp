#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "fft.hpp"

namespace capwave {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr cplx iu{0.0, 1.0};

/// Uniform periodic grid on [0, L): nodes a_j = j L / N, wavenumbers
/// xi_k = 2 pi k / L with k in {-N/2, ..., N/2 - 1}.
struct Grid {
  int N = 0;
  double L = 2.0 * pi;

  double dx() const { return L / N; }
  double node(int j) const { return L * static_cast<double>(j) / N; }
  // signed wavenumber index stored in transform slot m
  int k_of_slot(int m) const { return m < N / 2 ? m : m - N; }
  double xi(int k) const { return 2.0 * pi * static_cast<double>(k) / L; }
  double xi_of_slot(int m) const { return xi(k_of_slot(m)); }
  // largest wavenumber carried by the derivative (the -N/2 mode is dropped)
  double xi_max() const { return xi(N / 2 - 1); }
  bool operator==(const Grid&) const = default;
};

inline Grid make_grid(int N, double L = 2.0 * pi) {
  if (N < 16 || (N & (N - 1)) != 0)
    throw ConfigError("make_grid: N must be a power of two with N >= 16");
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("make_grid: L must be positive");
  return Grid{N, L};
}

/// Complex samples on a Grid. Value type; all operator algebra is pointwise.
struct Field {
  Grid grid;
  std::vector<cplx> v;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), v(static_cast<size_t>(g.N), cplx{0.0, 0.0}) {}
  Field(const Grid& g, std::vector<cplx> vals) : grid(g), v(std::move(vals)) {
    if (static_cast<int>(v.size()) != g.N) throw ConfigError("Field: sample count != N");
  }

  int size() const { return grid.N; }
  cplx& operator[](int j) { return v[static_cast<size_t>(j)]; }
  const cplx& operator[](int j) const { return v[static_cast<size_t>(j)]; }
};

inline void require_same_grid(const Field& a, const Field& b, const char* where) {
  if (!(a.grid == b.grid)) throw ConfigError(std::string(where) + ": fields live on different grids");
}

/// Build a field by sampling fn(alpha) at the grid nodes.
template <class Fn>
Field sample(const Grid& g, Fn&& fn) {
  Field f(g);
  for (int j = 0; j < g.N; ++j) f[j] = cplx(fn(g.node(j)));
  return f;
}

/// Pointwise map: out_j = fn(a_j ... ) over one or two fields.
template <class Fn>
Field map(const Field& a, Fn&& fn) {
  Field out(a.grid);
  for (int j = 0; j < a.size(); ++j) out[j] = fn(a[j]);
  return out;
}

template <class Fn>
Field map2(const Field& a, const Field& b, Fn&& fn) {
  require_same_grid(a, b, "map2");
  Field out(a.grid);
  for (int j = 0; j < a.size(); ++j) out[j] = fn(a[j], b[j]);
  return out;
}

inline Field operator+(const Field& a, const Field& b) {
  return map2(a, b, [](cplx x, cplx y) { return x + y; });
}
inline Field operator-(const Field& a, const Field& b) {
  return map2(a, b, [](cplx x, cplx y) { return x - y; });
}
inline Field operator*(const Field& a, const Field& b) {
  return map2(a, b, [](cplx x, cplx y) { return x * y; });
}
inline Field operator/(const Field& a, const Field& b) {
  return map2(a, b, [](cplx x, cplx y) { return x / y; });
}
inline Field operator*(cplx s, const Field& a) {
  return map(a, [s](cplx x) { return s * x; });
}
inline Field operator*(const Field& a, cplx s) { return s * a; }
inline Field operator*(double s, const Field& a) { return cplx(s, 0.0) * a; }
inline Field operator*(const Field& a, double s) { return cplx(s, 0.0) * a; }
inline Field operator-(const Field& a) { return -1.0 * a; }
inline Field operator+(const Field& a, cplx s) {
  return map(a, [s](cplx x) { return x + s; });
}
inline Field operator+(cplx s, const Field& a) { return a + s; }
inline Field operator-(const Field& a, cplx s) { return a + (-s); }
inline Field operator-(cplx s, const Field& a) { return (-1.0 * a) + s; }

inline Field conj(const Field& a) {
  return map(a, [](cplx x) { return std::conj(x); });
}
inline Field re(const Field& a) {
  return map(a, [](cplx x) { return cplx(x.real(), 0.0); });
}
inline Field im(const Field& a) {
  return map(a, [](cplx x) { return cplx(x.imag(), 0.0); });
}
/// pointwise complex exponential
inline Field exp(const Field& a) {
  return map(a, [](cplx x) { return std::exp(x); });
}

inline cplx mean(const Field& a) {
  cplx s{0.0, 0.0};
  for (int j = 0; j < a.size(); ++j) s += a[j];
  return s / static_cast<double>(a.size());
}

/// L2 norm with the continuum normalization: ||f||_2^2 = (L/N) sum_j |f_j|^2.
inline double l2(const Field& a) {
  double s = 0.0;
  for (int j = 0; j < a.size(); ++j) s += std::norm(a[j]);
  return std::sqrt(a.grid.dx() * s);
}

inline double linf(const Field& a) {
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j]));
  return m;
}

inline double min_real(const Field& a) {
  double m = a[0].real();
  for (int j = 1; j < a.size(); ++j) m = std::min(m, a[j].real());
  return m;
}

inline double max_real(const Field& a) {
  double m = a[0].real();
  for (int j = 1; j < a.size(); ++j) m = std::max(m, a[j].real());
  return m;
}

inline bool is_finite(const Field& a) {
  for (int j = 0; j < a.size(); ++j)
    if (!std::isfinite(a[j].real()) || !std::isfinite(a[j].imag())) return false;
  return true;
}

/// Fourier coefficients in transform slot order, normalized so that
/// f_j = sum_m fhat_m exp(i xi_{k(m)} a_j).
inline std::vector<cplx> spectrum(const Field& f) {
  std::vector<cplx> out(static_cast<size_t>(f.size()));
  detail::dft_forward(f.size(), f.v.data(), out.data());
  double inv = 1.0 / f.size();
  for (auto& z : out) z *= inv;
  return out;
}

inline Field from_spectrum(const Grid& g, const std::vector<cplx>& hat) {
  if (static_cast<int>(hat.size()) != g.N) throw ConfigError("from_spectrum: size != N");
  Field out(g);
  detail::dft_backward(g.N, hat.data(), out.v.data());
  return out;
}

/// Apply a Fourier multiplier sym(k) given the signed wavenumber index k.
template <class Sym>
Field apply_symbol(const Field& f, Sym&& sym) {
  std::vector<cplx> hat = spectrum(f);
  for (int m = 0; m < f.size(); ++m) hat[static_cast<size_t>(m)] *= cplx(sym(f.grid.k_of_slot(m)));
  return from_spectrum(f.grid, hat);
}

/// Assert the samples are real up to tol * (1 + max modulus), then drop the
/// imaginary residue.
inline Field realize(const Field& a, double tol = 1e-12, const char* where = "realize") {
  double mx = linf(a);
  double worst = 0.0;
  for (int j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j].imag()));
  if (!(worst <= tol * (1.0 + mx)))
    throw NumericalError(std::string(where) + ": imaginary residue " + std::to_string(worst) +
                         " exceeds tolerance");
  return re(a);
}

}  // namespace capwave
