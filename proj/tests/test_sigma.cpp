#include "orbicode/code_search.hpp"

#include <gtest/gtest.h>

using namespace orbicode;

namespace {

RatMatrix root_basis(std::int64_t p) {
  RatMatrix b(0, static_cast<std::size_t>(p));
  for (std::int64_t i = 1; i < p; ++i) b.append_row(n_root(p, 1, 0, i));
  return b;
}

IntPoly phi_power(std::int64_t p, int d) {
  IntPoly f{Int(1)};
  for (int i = 0; i < d; ++i) f = poly_mul(f, cyclotomic(p));
  return f;
}

}  // namespace

TEST(Polynomials, Cyclotomic) {
  EXPECT_EQ(cyclotomic(1), (IntPoly{-1, 1}));
  EXPECT_EQ(cyclotomic(3), (IntPoly{1, 1, 1}));
  EXPECT_EQ(cyclotomic(6), (IntPoly{1, -1, 1}));
  EXPECT_EQ(cyclotomic(9), (IntPoly{1, 0, 0, 1, 0, 0, 1}));
}

TEST(Polynomials, CharPolyOfCompanion) {
  IntMatrix m{{0, 1, 0}, {0, 0, 1}, {6, -11, 6}};
  // det(x - M) = x^3 - 6x^2 + 11x - 6
  EXPECT_EQ(char_poly(m), (IntPoly{-6, 11, -6, 1}));
}

TEST(Coxeter, MatrixOnRoots) {
  Isometry s = coxeter_sigma(3, 1);
  RatMatrix m = s.matrix_in_basis(root_basis(3));
  EXPECT_EQ(m, (RatMatrix{{0, 1}, {-1, -1}}));
}

TEST(Coxeter, OrderAndGram) {
  for (std::int64_t p : {3, 5, 7}) {
    Isometry s = coxeter_sigma(p, 1);
    EXPECT_EQ(s.order(), p);
    const RatMatrix m = to_rational(s.matrix());
    EXPECT_EQ(m * s.lattice().gram() * m.transpose(), s.lattice().gram());
    EXPECT_TRUE(s.fixed_point_free());
  }
}

TEST(Coxeter, GammaMovesByBetaZero) {
  for (std::int64_t p : {3, 5, 7}) {
    Isometry s = coxeter_sigma(p, 1);
    RatVector g = gamma_vector(p);
    RatVector sg = s.apply(g);
    RatVector b0 = n_root(p, 1, 0, 0);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(sg[i], g[i] + b0[i]);
  }
}

TEST(Coxeter, RootsCycle) {
  Isometry s = coxeter_sigma(5, 2);
  for (std::int64_t b = 0; b < 2; ++b)
    for (std::int64_t i = 0; i < 5; ++i)
      EXPECT_EQ(s.apply(n_root(5, 2, b, i)), n_root(5, 2, b, (i + 1) % 5));
}

TEST(CodeAction, P3IsOrderThreeMap) {
  CodeAction act = code_action(coxeter_sigma(3, 1), 3, 1);
  // (u1, u2) -> (u2, u1 + u2)
  EXPECT_EQ(act.k(0b01), 0b10u);
  EXPECT_EQ(act.k(0b10), 0b11u);
  EXPECT_EQ(act.k(0b11), 0b01u);
  EXPECT_TRUE(act.k_fixed_point_free);
  EXPECT_TRUE(act.l_identity);
  for (KBits v = 0; v < 4; ++v) EXPECT_EQ(act.k(act.k(act.k(v))), v);
}

TEST(CodeAction, FixedPointFreeOnK) {
  for (std::int64_t p : {3, 5, 7})
    for (std::int64_t d : {1, 2}) {
      CodeAction act = code_action(coxeter_sigma(p, d), p, d);
      EXPECT_TRUE(act.k_fixed_point_free);
      EXPECT_TRUE(act.l_identity);
    }
}

TEST(CodeAction, ThetaFixesKNegatesL) {
  CodeAction act = code_action(theta_isometry(5, 2), 5, 2);
  for (KBits v = 0; v < 256; ++v) EXPECT_EQ(act.k(v), v);
  EXPECT_TRUE(act.l_negation);
  EXPECT_FALSE(act.l_identity);
}

TEST(Spectral, P3) {
  SpectralData sd = spectral(coxeter_sigma(3, 1));
  EXPECT_EQ(sd.char_poly, cyclotomic(3));
  EXPECT_EQ(sd.m[3], 1);
  EXPECT_EQ(sd.m[1], -1);
  EXPECT_EQ(sd.r[0], 0);
  EXPECT_EQ(sd.r[1], 1);
  EXPECT_EQ(sd.r[2], 1);
}

TEST(Spectral, P5) {
  SpectralData sd = spectral(coxeter_sigma(5, 1));
  EXPECT_EQ(sd.m[5], 1);
  EXPECT_EQ(sd.m[1], -1);
  for (int i = 1; i < 5; ++i) EXPECT_EQ(sd.r[static_cast<std::size_t>(i)], 1);
}

TEST(Spectral, IdentityWithPeriodThree) {
  Lattice l = build_N(3);
  SpectralData sd = spectral(identity_isometry(l), 3);
  EXPECT_EQ(sd.m[1], 2);
  EXPECT_EQ(sd.m[3], 0);
  EXPECT_EQ(sd.r[0], 2);
  EXPECT_EQ(sd.r[1], 0);
  EXPECT_EQ(sd.r[2], 0);
}

TEST(Spectral, PowersOfCoxeterElement) {
  for (std::int64_t p : {3, 5, 7})
    for (std::int64_t d : {1, 2}) {
      Isometry s = coxeter_sigma(p, d);
      SpectralData base = spectral(s);
      EXPECT_EQ(base.char_poly, phi_power(p, static_cast<int>(d)));
      Int sum = 0, weighted = 0;
      for (const auto& [dv, md] : base.m) {
        sum += md;
        weighted += dv * md;
      }
      EXPECT_EQ(sum, 0);
      EXPECT_EQ(weighted, Int(static_cast<long>(s.lattice().rank())));
      for (std::int64_t k = 2; k < p; ++k) {
        SpectralData sk = spectral(s.power(k));
        EXPECT_EQ(sk.m, base.m);
        EXPECT_EQ(sk.r, base.r);
      }
    }
}

TEST(Spectral, CompositeOrder) {
  // sigma on sqrt(2) A_8 has char poly Phi_3 Phi_9
  SpectralData sd = spectral(coxeter_sigma(9, 1));
  EXPECT_EQ(sd.n[3], 1);
  EXPECT_EQ(sd.n[9], 1);
  EXPECT_EQ(sd.m[9], 1);
  EXPECT_EQ(sd.m[1], -1);
  EXPECT_EQ(sd.m[3], 0);
  // r_i depends only on the order of xi^i
  EXPECT_EQ(sd.r[3], sd.r[6]);
  EXPECT_EQ(sd.r[1], sd.r[2]);
  EXPECT_EQ(sd.r[0], 0);
}

TEST(Invariance, LatticeInvariantIffCodeInvariant) {
  KMap sigma = code_action(coxeter_sigma(3, 1), 3, 1).k;
  for (const auto& c : enumerate_codes_C(3, 1, {}))
    for (const auto& dc : enumerate_codes_D(3, 1, {})) {
      Lattice l = to_lattice(c, dc);
      bool lattice_inv = true;
      try {
        Isometry(l, coxeter_ambient(3, 1));
      } catch (const HypothesisError&) {
        lattice_inv = false;
      }
      EXPECT_EQ(lattice_inv, is_invariant(c, sigma));
    }
}

TEST(Invariance, OneMinusSigmaOfFullL) {
  for (std::int64_t p : {3, 5}) {
    const std::int64_t d = 1;
    Isometry s = coxeter_sigma(p, d);
    KMap k = code_action(s, p, d).k;
    for (const auto& c : enumerate_codes_C(p, d, {})) {
      if (!is_invariant(c, k)) continue;
      Lattice full_l = to_lattice(c, CodeD::full(p, d));
      Lattice zero_l = to_lattice(c, CodeD::zero(p, d));
      for (std::int64_t sp = 1; sp < p; ++sp)
        EXPECT_EQ(s.power(sp).one_minus_image(full_l), zero_l);
    }
  }
}

TEST(Isometry, RejectsNonInvariantLattice) {
  Lattice l = to_lattice(CodeC(3, 1, {KBits{1}}), CodeD::zero(3, 1));
  EXPECT_THROW(Isometry(l, coxeter_ambient(3, 1)), HypothesisError);
}
