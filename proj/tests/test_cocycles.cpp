#include "orbicode/cocycles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace orbicode;

namespace {

RatVector random_member(const Lattice& l, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  RatVector x(l.rank());
  for (auto& v : x) v = coef(rng);
  return l.vector_from(x);
}

RatVector add(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace

TEST(Modulus, Minimal) {
  // N has Gram content 2, so s <L,L> in 2pZ needs s = p
  EXPECT_EQ(minimal_modulus(build_N(3), 3), 6);
  EXPECT_EQ(minimal_modulus(build_N(5), 5), 10);
  Lattice l = to_lattice(CodeC::zero(3, 1), CodeD::full(3, 1));
  EXPECT_EQ(inner_product_content(l), Rational(2, 3));
  EXPECT_EQ(minimal_modulus(l, 3), 18);
}

TEST(Modulus, RejectsBadChoices) {
  Isometry s = coxeter_sigma(3, 1);
  EXPECT_THROW(CocycleSpec(s, Int(3)), HypothesisError);
  EXPECT_THROW(CocycleSpec(s, Int(4)), HypothesisError);
  EXPECT_NO_THROW(CocycleSpec(s, Int(12)));
}

TEST(Spec, RejectsIdentity) {
  EXPECT_THROW(CocycleSpec(identity_isometry(build_N(3))), HypothesisError);
}

TEST(FP, Coefficients) {
  EXPECT_EQ(f_p_coefficients(3), (std::vector<Int>{0, 1, -1}));
  EXPECT_EQ(f_p_coefficients(5), (std::vector<Int>{0, 1, 2, -2, -1}));
}

TEST(Forms, RootExample) {
  CocycleSpec sp(coxeter_sigma(3, 1));
  RatVector b1 = n_root(3, 1, 0, 1), b2 = n_root(3, 1, 0, 2);
  EXPECT_EQ(c_sigma(sp, b1, b2), 0);
  EXPECT_EQ(c_standard(sp, b1, b2), 0);
  EXPECT_EQ(c_sigma_check(sp, b1, b2), c_sigma_via_f(sp, b1, b2));
}

TEST(Forms, AlternatingBilinearInvariant) {
  std::mt19937_64 rng(7);
  for (std::int64_t p : {3, 5, 7}) {
    Isometry iso = coxeter_sigma(p, 1);
    CocycleSpec sp(iso);
    const Lattice& l = sp.lattice();
    const Int& s = sp.modulus();
    for (int trial = 0; trial < 20; ++trial) {
      RatVector a = random_member(l, rng), b = random_member(l, rng),
                c = random_member(l, rng);
      for (CocycleKind k : {CocycleKind::c, CocycleKind::c_sigma}) {
        EXPECT_EQ(appendix_form(sp, k, a, a), 0);
        EXPECT_EQ(mod(appendix_form(sp, k, a, b) + appendix_form(sp, k, b, a), s), 0);
        EXPECT_EQ(appendix_form(sp, k, iso.apply(a), iso.apply(b)),
                  appendix_form(sp, k, a, b));
      }
      for (CocycleKind k : {CocycleKind::eps, CocycleKind::eps_sigma})
        EXPECT_EQ(appendix_form(sp, k, add(a, b), c),
                  mod(appendix_form(sp, k, a, c) + appendix_form(sp, k, b, c), s));
      EXPECT_EQ(c_sigma_check(sp, a, b), c_sigma_via_f(sp, a, b));
      EXPECT_EQ(appendix_form(sp, CocycleKind::c_sigma, a, b), c_sigma(sp, a, b));
      EXPECT_EQ(appendix_form(sp, CocycleKind::c, a, b), c_standard(sp, a, b));
    }
  }
}

TEST(Forms, NonMemberRejected) {
  CocycleSpec sp(coxeter_sigma(3, 1));
  EXPECT_THROW(c_sigma(sp, gamma_vector(3), n_root(3, 1, 0, 1)), UsageError);
}

TEST(Forms, AppendixFormOnRationalLattice) {
  Lattice l = to_lattice(CodeC::zero(3, 1), CodeD::full(3, 1));
  CocycleSpec sp(Isometry(l, coxeter_ambient(3, 1)));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    RatVector a = random_member(l, rng), b = random_member(l, rng);
    EXPECT_EQ(appendix_form(sp, CocycleKind::c_sigma, a, a), 0);
    EXPECT_EQ(mod(appendix_form(sp, CocycleKind::c_sigma, a, b) +
                      appendix_form(sp, CocycleKind::c_sigma, b, a),
                  sp.modulus()),
              0);
  }
}

TEST(Radical, ContainsCoinvariantsAndIsInvariant) {
  for (std::int64_t p : {3, 5})
    for (std::int64_t d : {1, 2}) {
      Isometry iso = coxeter_sigma(p, d);
      Lattice r = radical_of(CocycleSpec(iso));
      EXPECT_TRUE(contains(r, iso.one_minus_image(iso.lattice())));
      EXPECT_TRUE(contains(iso.lattice(), r));
      EXPECT_EQ(image(r, iso.ambient()), r);
    }
}

TEST(Radical, IndependentOfModulusMultiple) {
  Isometry iso = coxeter_sigma(5, 1);
  EXPECT_EQ(radical_of(CocycleSpec(iso)), radical_of(CocycleSpec(iso, Int(20))));
}
