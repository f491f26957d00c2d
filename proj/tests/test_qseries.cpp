#include "orbicode/qseries.hpp"

#include <gtest/gtest.h>

using namespace orbicode;

TEST(Eta, LeadingTerms) {
  QSeries e = eta_series(6);
  EXPECT_EQ(e.denom(), 24);
  EXPECT_EQ(e.coefficient(Rational(1, 24)), 1);
  EXPECT_EQ(e.coefficient(Rational(25, 24)), -1);
  EXPECT_EQ(e.coefficient(Rational(1, 24) + 5), 1);
}

TEST(Eta, PentagonalNumbers) {
  QSeries e = eta_series(40);
  for (std::int64_t n = 0; n <= 40; ++n) {
    Rational expect = 0;
    for (std::int64_t k = -6; k <= 6; ++k)
      if (k * (3 * k - 1) / 2 == n) expect = (k % 2 == 0) ? 1 : -1;
    EXPECT_EQ(e.coefficient(Rational(1, 24) + n), expect) << n;
  }
}

TEST(Eta, ModularFixedPoint) {
  EXPECT_LT(eta_transform_residual(1.0), 1e-10);
  EXPECT_LT(eta_transform_residual(0.7), 1e-10);
  EXPECT_NEAR(eta_at(1.0), 0.768225422326057, 1e-12);
}

TEST(TwistedChar, LeadingExponents) {
  SpectralData s3 = spectral(coxeter_sigma(3, 1));
  QSeries z3 = twisted_char(s3, 3, 2, 3);
  EXPECT_EQ(z3.valuation(), Rational(1, 36));
  EXPECT_EQ(z3.coefficient(Rational(1, 36)), 1);
  // first-order terms from (1 - q^{1/3})^{-r_2} (1 - q^{2/3})^{-r_1}
  EXPECT_EQ(z3.coefficient(Rational(1, 36) + Rational(1, 3)), 1);
  EXPECT_EQ(z3.coefficient(Rational(1, 36) + Rational(2, 3)), 2);
  SpectralData s5 = spectral(coxeter_sigma(5, 1));
  EXPECT_EQ(twisted_char(s5, 5, 4, 2).valuation(), Rational(1, 30));
}

TEST(TwistedChar, RejectsFixedVectors) {
  SpectralData sd = spectral(identity_isometry(build_N(3)), 3);
  EXPECT_THROW(twisted_char(sd, 3, 2, 3), HypothesisError);
}

TEST(TwistedChar, AgreesWithEtaQuotient) {
  for (std::int64_t p : {3, 5})
    for (std::int64_t d : {1, 2}) {
      SpectralData sd = spectral(coxeter_sigma(p, d));
      QSeries a = twisted_char(sd, p, sd.rank, 3);
      QSeries b = twisted_char_via_eta(sd, 3);
      EXPECT_TRUE(a.agrees_with(b)) << p << " " << d;
      EXPECT_GE(std::min(a.precision(), b.precision()), a.valuation() + 3);
    }
}

TEST(LatticeChar, NonnegativeIntegerCoefficients) {
  for (std::int64_t p : {3, 5}) {
    QSeries z = lattice_voa_char(build_N(p), 3);
    for (const auto& [e, c] : z.terms()) {
      EXPECT_TRUE(is_integer(c));
      EXPECT_GT(c, 0) << to_string(e);
    }
  }
  // Z^1 lattice VOA: theta_Z / eta, constant term 1 after q^{-1/24}
  Lattice z1 = Lattice::from_gram(RatMatrix{{1}});
  QSeries z = lattice_voa_char(z1, 2);
  EXPECT_EQ(z.coefficient(Rational(-1, 24)), 1);
  EXPECT_EQ(z.coefficient(Rational(-1, 24) + Rational(1, 2)), 2);
}

TEST(Transform, SelfDualSquareLattice) {
  Lattice z2 = Lattice::from_gram(RatMatrix{{1, 0}, {0, 1}});
  EXPECT_LT(transform_check(z2, 1.0), 1e-10);
  EXPECT_LT(transform_check(z2, 0.5), 1e-10);
}

TEST(Transform, RootLattice) {
  for (double y : {0.5, 1.0, 2.0}) {
    EXPECT_LT(transform_check(build_N(3), y), 1e-8) << y;
    EXPECT_LT(transform_check(build_N(5), y), 1e-8) << y;
  }
}

TEST(NumericQdim, P3) {
  Isometry s = coxeter_sigma(3, 1);
  NumericQdim q = numeric_qdim(s.lattice(), spectral(s), 1);
  EXPECT_NEAR(q.value, 2.0, 1e-6);
  EXPECT_LT(q.error, 1e-6);
  EXPECT_NEAR(q.limit_prefactor, 2.0, 1e-12);
  // the uncorrected ratio approaches the limit as y decreases
  for (std::size_t i = 1; i < q.points.size(); ++i)
    EXPECT_LT(std::abs(q.points[i].ratio - 2.0), std::abs(q.points[i - 1].ratio - 2.0));
}

TEST(NumericQdim, P5) {
  Isometry s = coxeter_sigma(5, 1);
  NumericQdim q = numeric_qdim(s.lattice(), spectral(s), 1);
  EXPECT_NEAR(q.value, 4.0, 1e-6);
}

TEST(NumericQdim, Guards) {
  Lattice n = build_N(3);
  EXPECT_THROW(numeric_qdim(n, spectral(identity_isometry(n), 3), 1), HypothesisError);
  SpectralData sd = spectral(coxeter_sigma(3, 1));
  EXPECT_THROW(numeric_qdim(n, sd, 1, {}), UsageError);
  EXPECT_THROW(numeric_qdim(n, sd, 1, {0.5, -1.0}), UsageError);
  EXPECT_THROW(numeric_qdim(n, sd, 1, {0.5}, 2), ResourceError);
}
