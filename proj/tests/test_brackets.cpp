#include <capwave/capwave.hpp>
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "testutil.hpp"

using namespace capwave;
using testutil::random_real_field;
using testutil::rel_err;

TEST(Commutator, SingleModePair) {
  Grid g = make_grid(64);
  Field fm = sample(g, [&](double a) { return std::polar(1.0, -g.xi(1) * a); });
  Field fp = sample(g, [&](double a) { return std::polar(1.0, g.xi(1) * a); });
  Field got = commutator_hilbert(fm, fp);
  EXPECT_LE(linf(got + cplx{1.0, 0.0}), 1e-13);
}

TEST(Commutator, RealPairGivesImaginary) {
  std::mt19937 rng(21);
  Grid g = make_grid(256);
  for (int trial = 0; trial < 10; ++trial) {
    Field f = random_real_field(g, 60, rng);
    Field h = random_real_field(g, 60, rng);
    Field got = commutator_hilbert(f, h);
    double worst = 0.0;
    for (int j = 0; j < got.size(); ++j) worst = std::max(worst, std::abs(got[j].real()));
    EXPECT_LE(worst, 1e-12 * (1.0 + linf(got)));
  }
}

TEST(Commutator, GridMismatchRejected) {
  std::mt19937 rng(22);
  Field a = random_real_field(make_grid(64), 10, rng);
  Field b = random_real_field(make_grid(128), 10, rng);
  EXPECT_THROW(commutator_hilbert(a, b), ConfigError);
}

TEST(CommutatorDeriv, HolomorphicModeVanishes) {
  Grid g = make_grid(64);
  Field fm = sample(g, [&](double a) { return std::polar(1.0, -g.xi(1) * a); });
  EXPECT_LE(linf(commutator_hilbert_deriv(fm, fm)), 1e-13);
}

TEST(CommutatorDeriv, MatchesQuadratureOracle) {
  std::mt19937 rng(23);
  Grid g = make_grid(512);
  Field f = random_real_field(g, 32, rng);
  Field h = random_real_field(g, 32, rng);
  Field got = commutator_hilbert_deriv(f, h);
  Field want = oracle::commutator_deriv_quadrature(f, h);
  EXPECT_LE(rel_err(got, want), 1e-8);
}

TEST(TripleBracket, ConstantSlotsVanish) {
  std::mt19937 rng(24);
  Grid g = make_grid(128);
  Field f = random_real_field(g, 8, rng);
  Field h = random_real_field(g, 8, rng);
  Field one = sample(g, [](double) { return 3.7; });
  EXPECT_LE(linf(triple_bracket_dg(one, f, h)), 1e-11 * (1.0 + linf(f)));
  EXPECT_LE(linf(triple_bracket_dg(f, one, h)), 1e-11 * (1.0 + linf(f)));
}

TEST(TripleBracket, BilinearAndSymmetric) {
  std::mt19937 rng(25);
  Grid g = make_grid(256);
  Field h1 = random_real_field(g, 16, rng);
  Field h2 = random_real_field(g, 16, rng);
  Field f = random_real_field(g, 16, rng);
  Field w = random_real_field(g, 16, rng);

  Field lhs = triple_bracket_dg(h1 + 2.0 * h2, f, w);
  Field rhs = triple_bracket_dg(h1, f, w) + 2.0 * triple_bracket_dg(h2, f, w);
  EXPECT_LE(rel_err(lhs, rhs), 1e-12);

  Field ab = triple_bracket_dg(h1, f, w);
  Field ba = triple_bracket_dg(f, h1, w);
  EXPECT_LE(rel_err(ab, ba), 1e-11);
}

TEST(TripleBracket, MatchesQuadratureOracle) {
  std::mt19937 rng(26);
  Grid g = make_grid(512);
  Field h = random_real_field(g, 32, rng);
  Field f = random_real_field(g, 32, rng);
  Field w = random_real_field(g, 32, rng);
  Field got = triple_bracket_dg(h, f, w);
  Field want = oracle::triple_bracket_quadrature(h, f, w);
  EXPECT_LE(rel_err(got, want), 1e-6);
}

TEST(TripleBracket, IdentityItemOne) {
  // h d/da [f,H]g' = [h f',H]g' + [f,H](h g')' - [h,f;g'] with the bracket
  // from the independent quadrature
  std::mt19937 rng(27);
  Grid g = make_grid(512);
  Field h = random_real_field(g, 32, rng);
  Field f = random_real_field(g, 32, rng);
  Field w = random_real_field(g, 32, rng);
  Field lhs = h * derivative(commutator_hilbert_deriv(f, w));
  Field rhs = commutator_hilbert(h * derivative(f), derivative(w)) +
              commutator_hilbert(f, derivative(h * derivative(w))) -
              oracle::triple_bracket_quadrature(h, f, w);
  EXPECT_LE(rel_err(lhs, rhs), 1e-6);
}

TEST(TripleBracket, IdentityItemTwoHolomorphic) {
  // with P_A g = 0: (I-H)(b g') = [b,H]g' exactly
  std::mt19937 rng(28);
  Grid g = make_grid(256);
  Field b = random_real_field(g, 40, rng);
  Field gh = project_holo(testutil::random_complex_field(g, 40, rng));
  ASSERT_LE(linf(project_antiholo(gh - mean(gh))), 1e-12);
  Field X = dealias(b * derivative(gh));
  Field lhs = X - hilbert(X);
  Field rhs = commutator_hilbert_deriv(b, gh);
  EXPECT_LE(rel_err(lhs, rhs), 1e-13);
}

TEST(QuadratureOracle, KnownTargets) {
  Grid g = make_grid(256);
  Field f = sample(g, [](double a) { return std::cos(3.0 * a); });
  Field want = sample(g, [](double a) { return cplx{0.0, -std::sin(3.0 * a)}; });
  EXPECT_LE(rel_err(oracle::hilbert_quadrature(f), want), 1e-8);

  Field one = sample(g, [](double) { return 1.0; });
  EXPECT_LE(linf(oracle::hilbert_quadrature(one)), 1e-10);
}

TEST(QuadratureOracle, MatchesSpectralHilbert) {
  std::mt19937 rng(29);
  Grid g = make_grid(512);
  Field f = random_real_field(g, 128, rng);  // band N/4
  Field got = oracle::hilbert_quadrature(f);
  Field want = hilbert(f);
  EXPECT_LE(rel_err(got, want), 1e-8);
}
