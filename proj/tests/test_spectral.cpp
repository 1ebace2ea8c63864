#include <capwave/capwave.hpp>
#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "testutil.hpp"

using namespace capwave;
using testutil::random_complex_field;
using testutil::random_real_field;
using testutil::rel_err;

TEST(Grid, Construction) {
  Grid g = make_grid(256);
  EXPECT_EQ(g.N, 256);
  EXPECT_DOUBLE_EQ(g.L, 2.0 * pi);
  EXPECT_DOUBLE_EQ(g.node(0), 0.0);
  EXPECT_NEAR(g.node(128), pi, 1e-15);
  EXPECT_DOUBLE_EQ(g.xi(1), 1.0);
  EXPECT_DOUBLE_EQ(g.xi_max(), 127.0);
  Grid g2 = make_grid(64, 4.0 * pi);
  EXPECT_DOUBLE_EQ(g2.xi(1), 0.5);
}

TEST(Grid, Rejections) {
  EXPECT_THROW(make_grid(0), ConfigError);
  EXPECT_THROW(make_grid(8), ConfigError);
  EXPECT_THROW(make_grid(100), ConfigError);
  EXPECT_THROW(make_grid(-256), ConfigError);
  EXPECT_THROW(make_grid(256, 0.0), ConfigError);
  EXPECT_THROW(make_grid(256, -1.0), ConfigError);
}

TEST(Transform, RoundTripAllSizes) {
  std::mt19937 rng(11);
  for (int N : {16, 64, 256, 1024, 4096}) {
    Grid g = make_grid(N);
    Field f = random_complex_field(g, N / 2 - 1, rng);
    Field back = from_spectrum(g, spectrum(f));
    EXPECT_LE(rel_err(back, f), 1e-13) << "N=" << N;
  }
}

TEST(Transform, NormalizationConvention) {
  Grid g = make_grid(64);
  Field f = sample(g, [&](double a) { return std::polar(1.0, g.xi(3) * a); });
  auto hat = spectrum(f);
  EXPECT_NEAR(std::abs(hat[3] - cplx{1.0, 0.0}), 0.0, 1e-14);
  for (int m = 0; m < 64; ++m)
    if (m != 3) EXPECT_LE(std::abs(hat[m]), 1e-14);

  // Parseval: ||f||_2^2 = (L/N) sum |f_j|^2 = L sum |fhat_k|^2
  std::mt19937 rng(12);
  Field r = random_complex_field(g, 20, rng);
  double grid_sq = sq(l2(r));
  double spec_sq = 0.0;
  for (const cplx& z : spectrum(r)) spec_sq += std::norm(z);
  spec_sq *= g.L;
  EXPECT_NEAR(grid_sq, spec_sq, 1e-12 * grid_sq);
}

TEST(Derivative, SingleModes) {
  Grid g = make_grid(256);
  Field f = sample(g, [](double a) { return std::sin(3.0 * a); });
  Field want = sample(g, [](double a) { return 3.0 * std::cos(3.0 * a); });
  EXPECT_LE(rel_err(derivative(f), want), 1e-13);

  // top resolved mode survives, the unpaired one is annihilated
  Field top = sample(g, [&](double a) { return std::polar(1.0, g.xi(127) * a); });
  EXPECT_LE(rel_err(derivative(top), iu * 127.0 * top), 1e-12);
  Field nyq = sample(g, [&](double a) { return std::cos(g.xi(128) * a); });
  EXPECT_LE(linf(derivative(nyq)), 1e-12);
}

TEST(Derivative, LDependence) {
  Grid g = make_grid(64, 4.0 * pi);
  Field f = sample(g, [](double a) { return std::sin(0.5 * a); });
  Field want = sample(g, [](double a) { return 0.5 * std::cos(0.5 * a); });
  EXPECT_LE(rel_err(derivative(f), want), 1e-13);
}

TEST(Hilbert, SymbolAndConstants) {
  Grid g = make_grid(64);
  for (int k : {1, 5, 21}) {
    Field fp = sample(g, [&](double a) { return std::polar(1.0, g.xi(k) * a); });
    Field fm = sample(g, [&](double a) { return std::polar(1.0, -g.xi(k) * a); });
    EXPECT_LE(rel_err(hilbert(fp), -1.0 * fp), 1e-13);
    EXPECT_LE(rel_err(hilbert(fm), fm), 1e-13);
  }
  Field one = sample(g, [](double) { return 1.0; });
  EXPECT_LE(linf(hilbert(one)), 1e-14);
}

TEST(Hilbert, SquareIsIdentityMinusMean) {
  std::mt19937 rng(13);
  Grid g = make_grid(256);
  for (int trial = 0; trial < 20; ++trial) {
    Field f = random_complex_field(g, 100, rng);
    Field want = f - mean(f);
    EXPECT_LE(rel_err(hilbert(hilbert(f)), want), 1e-12);
  }
}

TEST(Hilbert, RealGivesImaginary) {
  std::mt19937 rng(14);
  Grid g = make_grid(256);
  for (int trial = 0; trial < 20; ++trial) {
    Field f = random_real_field(g, 100, rng);
    Field hf = hilbert(f);
    double worst = 0.0;
    for (int j = 0; j < hf.size(); ++j) worst = std::max(worst, std::abs(hf[j].real()));
    EXPECT_LE(worst, 1e-12 * (1.0 + linf(f)));
  }
}

TEST(Hilbert, FormRealFormImag) {
  // (I+H)(Re f) = f - i Im (I-H)f and (I+H)(i Im f) = f - Re (I-H)f,
  // mean-zero fields
  std::mt19937 rng(15);
  Grid g = make_grid(256);
  for (int trial = 0; trial < 20; ++trial) {
    Field f = random_complex_field(g, 100, rng);
    f = f - mean(f);
    Field lhs1 = re(f) + hilbert(re(f));
    Field rhs1 = f - iu * im(f - hilbert(f));
    EXPECT_LE(rel_err(lhs1, rhs1), 1e-12);
    Field iif = iu * im(f);
    Field lhs2 = iif + hilbert(iif);
    Field rhs2 = f - re(f - hilbert(f));
    EXPECT_LE(rel_err(lhs2, rhs2), 1e-12);

    // H(Re f) = i Im(H f)
    EXPECT_LE(rel_err(hilbert(re(f)), iu * im(hilbert(f))), 1e-12);
  }
}

TEST(FractionalDeriv, BasicsAndSemigroup) {
  Grid g = make_grid(256);
  std::mt19937 rng(16);
  Field f = random_complex_field(g, 100, rng);
  f = f - mean(f);

  EXPECT_LE(rel_err(fractional_deriv(f, 0.0), f), 1e-15);

  // |d/da| = i H d/da with identical multipliers
  Field a = fractional_deriv(f, 1.0);
  Field b = iu * hilbert(derivative(f));
  EXPECT_LE(rel_err(a, b), 1e-12);

  // semigroup
  Field lhs = fractional_deriv(fractional_deriv(f, 0.5), 1.5);
  Field rhs = fractional_deriv(f, 2.0);
  EXPECT_LE(rel_err(lhs, rhs), 1e-12);

  // single mode scaling
  Field m7 = sample(g, [&](double al) { return std::polar(1.0, g.xi(7) * al); });
  EXPECT_LE(rel_err(fractional_deriv(m7, 0.5), std::sqrt(7.0) * m7), 1e-13);

  // mean annihilated
  Field one = sample(g, [](double) { return 2.5; });
  EXPECT_LE(linf(fractional_deriv(one, 1.0)), 1e-14);
  EXPECT_THROW(fractional_deriv(f, -1.0), ConfigError);
}

TEST(Projections, PartitionAndRanges) {
  Grid g = make_grid(64);
  std::mt19937 rng(17);
  Field f = random_complex_field(g, 31, rng);
  EXPECT_LE(rel_err(project_holo(f) + project_antiholo(f), f), 1e-13);

  // negative modes pass project_holo untouched, positive die
  Field neg = sample(g, [&](double a) { return std::polar(1.0, -g.xi(5) * a); });
  Field pos = sample(g, [&](double a) { return std::polar(1.0, g.xi(5) * a); });
  EXPECT_LE(rel_err(project_holo(neg), neg), 1e-13);
  EXPECT_LE(linf(project_holo(pos)), 1e-13);
  EXPECT_LE(rel_err(project_antiholo(pos), pos), 1e-13);
  EXPECT_LE(linf(project_antiholo(neg)), 1e-13);

  // the mean splits evenly
  Field one = sample(g, [](double) { return 1.0; });
  EXPECT_LE(linf(project_holo(one) - cplx{0.5, 0.0}), 1e-14);
  EXPECT_LE(linf(project_antiholo(one) - cplx{0.5, 0.0}), 1e-14);
}

TEST(Poisson, SemigroupAndSymbol) {
  Grid g = make_grid(256);
  std::mt19937 rng(18);
  Field f = random_complex_field(g, 100, rng);
  Field lhs = poisson_smooth(poisson_smooth(f, 0.03), 0.07);
  Field rhs = poisson_smooth(f, 0.1);
  EXPECT_LE(rel_err(lhs, rhs), 1e-12);
  EXPECT_LE(rel_err(poisson_smooth(f, 0.0), f), 1e-14);

  Field m9 = sample(g, [&](double a) { return std::polar(1.0, -g.xi(9) * a); });
  EXPECT_LE(rel_err(poisson_smooth(m9, 0.2), std::exp(-0.2 * 9.0) * m9), 1e-13);
  EXPECT_THROW(poisson_smooth(f, -0.1), ConfigError);
}

TEST(Mollify, SymbolAndNormDrop) {
  Grid g = make_grid(256);
  std::mt19937 rng(19);
  Field f = random_complex_field(g, 100, rng);
  EXPECT_LE(rel_err(mollify(f, 0.0), f), 1e-14);

  Field m4 = sample(g, [&](double a) { return std::polar(1.0, g.xi(4) * a); });
  EXPECT_LE(rel_err(mollify(m4, 0.3), std::exp(-0.5 * sq(0.3 * 4.0)) * m4), 1e-13);

  Field e1 = sample(g, [&](double a) { return std::polar(1.0, g.xi(1) * a); });
  double drop = l2(mollify(e1, 0.1) - e1);
  EXPECT_NEAR(drop, (1.0 - std::exp(-0.005)) * l2(e1), 1e-12);
  EXPECT_THROW(mollify(f, -0.1), ConfigError);
}

TEST(Dealias, CutoffPlacement) {
  Grid g = make_grid(64);
  // |k| <= 21 survives the 2/3 rule at N=64
  Field k21 = sample(g, [&](double a) { return std::polar(1.0, g.xi(21) * a); });
  Field k22 = sample(g, [&](double a) { return std::polar(1.0, g.xi(22) * a); });
  Field k31 = sample(g, [&](double a) { return std::polar(1.0, g.xi(31) * a); });
  EXPECT_LE(rel_err(dealias(k21), k21), 1e-13);
  EXPECT_LE(linf(dealias(k22)), 1e-13);
  EXPECT_LE(linf(dealias(k31)), 1e-13);

  std::mt19937 rng(20);
  Field f = random_complex_field(g, 21, rng);
  EXPECT_LE(rel_err(dealias(f), f), 1e-13);
  Field full = random_complex_field(g, 31, rng);
  EXPECT_LE(rel_err(dealias(full, 1.0), full), 1e-15);
  EXPECT_THROW(dealias(f, 0.0), ConfigError);
  EXPECT_THROW(dealias(f, 1.5), ConfigError);
}

TEST(Transform, ConcurrentUse) {
  std::vector<std::thread> threads;
  std::atomic<bool> ok{true};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([t, &ok] {
      std::mt19937 rng(100 + t);
      Grid g = make_grid(t % 2 == 0 ? 128 : 256);
      for (int it = 0; it < 50; ++it) {
        Field f = random_complex_field(g, 40, rng);
        if (rel_err(hilbert(hilbert(f)), f - mean(f)) > 1e-12) ok = false;
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_TRUE(ok);
}
