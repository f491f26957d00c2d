#include "orbicode/code_search.hpp"

#include <gtest/gtest.h>

using namespace orbicode;

namespace {

// bits for k-words written left to right as u_1, u_2, ...
KBits kw(std::initializer_list<int> bits) {
  KBits v = 0;
  int i = 0;
  for (int b : bits) v |= KBits(b & 1) << i++;
  return v;
}

}  // namespace

TEST(InnerK, Examples) {
  EXPECT_EQ(inner_k(3, 1, kw({1, 0}), kw({0, 1})), 1);
  EXPECT_EQ(inner_k(3, 1, kw({1, 0}), 0), 0);
  EXPECT_EQ(inner_k(3, 1, kw({1, 0}), kw({1, 0})), 0);
  EXPECT_EQ(inner_k(3, 1, kw({1, 1}), kw({1, 1})), 0);
}

TEST(InnerK, DoesNotCrossBlocks) {
  // last coordinate of block 0 is not adjacent to first of block 1
  EXPECT_EQ(inner_k(3, 2, kw({0, 1, 0, 0}), kw({0, 0, 1, 0})), 0);
  EXPECT_EQ(inner_k(3, 2, kw({0, 0, 1, 0}), kw({0, 0, 0, 1})), 1);
}

TEST(InnerL, Examples) {
  EXPECT_EQ(inner_l(3, {1}, {1}), 1);
  EXPECT_EQ(inner_l(3, {2}, {0}), 0);
  EXPECT_EQ(inner_l(5, {1, 2}, {3, 1}), 0);
  EXPECT_THROW(inner_l(5, {1}, {1, 2}), UsageError);
}

TEST(Qform, Examples) {
  EXPECT_EQ(qform(3, 1, 0), 0);
  EXPECT_EQ(qform(3, 1, kw({1, 0})), 1);
  EXPECT_EQ(qform(3, 1, kw({1, 1})), 1);
  EXPECT_EQ(qform(5, 1, kw({1, 1, 0, 0})), 1);
  EXPECT_EQ(qform(5, 1, kw({1, 0, 1, 0})), 0);
}

TEST(Qform, PolarizationIsInnerK) {
  for (std::int64_t p : {3, 5}) {
    const std::int64_t d = 2;
    const KBits top = KBits{1} << k_length(p, d);
    for (KBits u = 0; u < top; ++u)
      for (KBits v = 0; v < top; v += 3)
        EXPECT_EQ((qform(p, d, u ^ v) + qform(p, d, u) + qform(p, d, v)) & 1,
                  inner_k(p, d, u, v));
  }
}

TEST(Qform, MatchesHalfNormOfHalfRoots) {
  // q(u) = <beta(u,0), beta(u,0)>/2 * 2 mod 2, i.e. the norm of the lift
  Lattice n = build_N(5);
  for (KBits u = 0; u < 16; ++u) {
    Rational norm = n.norm(beta_vector(5, 1, u, {0}));
    EXPECT_EQ(mod(num(norm), Int(2)), qform(5, 1, u)) << u;
    EXPECT_TRUE(is_integer(norm));
  }
}

TEST(Weight, Examples) {
  EXPECT_EQ(weight(3, 1, 0, {0}), 0);
  EXPECT_EQ(weight(3, 1, 0, {1}), Rational(4, 3));
  EXPECT_EQ(weight(3, 1, kw({1, 0}), {0}), 1);
  EXPECT_EQ(weight(3, 2, kw({1, 0, 0, 0}), {0, 1}), Rational(7, 3));
}

TEST(CodeLabel, InvertsBetaVector) {
  for (std::int64_t p : {3, 5}) {
    for (KBits u = 0; u < (KBits{1} << (2 * (p - 1))); u += 5)
      for (int a0 = 0; a0 < p; ++a0) {
        LDigits a{a0, (a0 + 1) % static_cast<int>(p)};
        auto [u2, a2] = code_label(p, 2, beta_vector(p, 2, u, a));
        EXPECT_EQ(u2, u);
        EXPECT_EQ(a2, a);
      }
  }
}

TEST(Dual, Extremes) {
  EXPECT_EQ(dual_code_C(CodeC::zero(3, 2)), CodeC::full(3, 2));
  EXPECT_EQ(dual_code_C(CodeC::full(3, 2)), CodeC::zero(3, 2));
  EXPECT_EQ(dual_code_D(CodeD::zero(5, 2)), CodeD::full(5, 2));
  EXPECT_EQ(dual_code_D(CodeD::full(5, 2)), CodeD::zero(5, 2));
}

TEST(Dual, OneDimensionalSelfDual) {
  CodeC c(3, 1, {kw({1, 1})});
  EXPECT_EQ(dual_code_C(c), c);
  EXPECT_TRUE(self_dual(c));
}

TEST(Dual, Dimensions) {
  for (const auto& c : enumerate_codes_C(3, 2, {}))
    EXPECT_EQ(c.dim() + dual_code_C(c).dim(), 4u);
  for (const auto& dc : enumerate_codes_D(5, 2, {}))
    EXPECT_EQ(dc.dim() + dual_code_D(dc).dim(), 2u);
}

TEST(SplitE, Examples) {
  auto [c0, d0] = split_E({3, 1, {}});
  EXPECT_EQ(c0, CodeC::zero(3, 1));
  EXPECT_EQ(d0, CodeD::zero(3, 1));

  auto [c1, d1] = split_E({3, 1, {{kw({1, 0}), {1}}}});
  EXPECT_EQ(c1, CodeC(3, 1, {kw({1, 0})}));
  EXPECT_EQ(d1, CodeD::full(3, 1));

  auto [c2, d2] = split_E({3, 1, {{kw({1, 0}), {0}}, {kw({0, 1}), {0}}, {0, {1}}}});
  EXPECT_EQ(c2, CodeC::full(3, 1));
  EXPECT_EQ(d2, CodeD::full(3, 1));
}

TEST(Evenness, Examples) {
  auto e0 = evenness(CodeC::zero(3, 1), CodeD::zero(3, 1));
  EXPECT_TRUE(e0.c_even);
  EXPECT_TRUE(e0.d_even);
  EXPECT_FALSE(evenness(CodeC(3, 1, {kw({1, 0})}), CodeD::zero(3, 1)).c_even);
  EXPECT_TRUE(evenness(CodeC::zero(3, 3), CodeD(3, 3, {{1, 1, 1}})).d_even);
  EXPECT_FALSE(evenness(CodeC::zero(3, 1), CodeD::full(3, 1)).d_even);
}

TEST(ToLattice, Extremes) {
  EXPECT_EQ(to_lattice(CodeC::zero(3, 2), CodeD::zero(3, 2)), build_N_power(3, 2));
  EXPECT_EQ(to_lattice(CodeC::full(3, 2), CodeD::full(3, 2)),
            dual_lattice(build_N_power(3, 2)));
}

TEST(ToLattice, IndexTwoExtension) {
  Lattice l = to_lattice(CodeC(3, 1, {kw({1, 1})}), CodeD::zero(3, 1));
  EXPECT_EQ(quotient(l, build_N(3)).order(), 2);
  auto par = parity_report(l);
  EXPECT_TRUE(par.integral);
  EXPECT_EQ(par.even, qform(3, 1, kw({1, 1})) == 0);
  EXPECT_FALSE(par.even);
}

TEST(Enumerate, SubspaceCounts) {
  // subspaces of F_2^2: 5, of F_3: 2, of F_2^4: 67, of F_5^2: 8
  EXPECT_EQ(enumerate_codes_C(3, 1, {}).size(), 5u);
  EXPECT_EQ(enumerate_codes_D(3, 1, {}).size(), 2u);
  EXPECT_EQ(enumerate_codes_C(3, 2, {}).size(), 67u);
  EXPECT_EQ(enumerate_codes_D(5, 2, {}).size(), 8u);
}

TEST(Enumerate, NoSelfDualInvariantCodeForP3D1) {
  CodeConstraints cons;
  cons.self_dual = true;
  cons.sigma_invariant = true;
  EXPECT_TRUE(enumerate_codes_C(3, 1, cons).empty());
}

TEST(Enumerate, EvenDForP3D1IsZeroOnly) {
  CodeConstraints cons;
  cons.even = true;
  auto list = enumerate_codes_D(3, 1, cons);
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0].dim(), 0u);
}

TEST(Enumerate, DegenerateLength) {
  auto list = enumerate_codes_C(3, 0, {});
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0].dim(), 0u);
}

TEST(Enumerate, EvenListsIncludeZero) {
  CodeConstraints cons;
  cons.even = true;
  auto list = enumerate_codes_C(3, 1, cons);
  ASSERT_FALSE(list.empty());
  EXPECT_EQ(list[0], CodeC::zero(3, 1));
  for (const auto& c : list) EXPECT_TRUE(evenness(c, CodeD::zero(3, 1)).c_even);
}

TEST(Enumerate, SizeLimitIsResourceError) {
  EXPECT_THROW(enumerate_codes_C(7, 5, {}), ResourceError);
  EXPECT_THROW(enumerate_codes_D(3, 7, {}), ResourceError);
  EXPECT_THROW(enumerate_codes_C(3, 8, {}, 100), ResourceError);
}

TEST(Enumerate, SelfDualInvariantEvenAtP5D2) {
  CodeConstraints cons;
  cons.self_dual = cons.sigma_invariant = cons.even = true;
  auto list = enumerate_codes_C(5, 2, cons);
  KMap sigma = code_action(coxeter_sigma(5, 2), 5, 2).k;
  for (const auto& c : list) {
    EXPECT_EQ(c.dim(), 4u);
    EXPECT_TRUE(self_dual(c));
    EXPECT_TRUE(is_invariant(c, sigma));
    EXPECT_TRUE(evenness(c, CodeD::zero(5, 2)).c_even);
  }
}

// Dual lattice of L_{C x D} is L_{C^perp x D^perp}; integral iff
// self-orthogonal; unimodular iff self-dual; even iff both parts even.
TEST(CodeLatticeDictionary, ExhaustiveP3D1) {
  int count = 0;
  for (const auto& c : enumerate_codes_C(3, 1, {}))
    for (const auto& dc : enumerate_codes_D(3, 1, {})) {
      ++count;
      Lattice l = to_lattice(c, dc);
      CodeC cp = dual_code_C(c);
      CodeD dp = dual_code_D(dc);
      EXPECT_EQ(dual_lattice(l), to_lattice(cp, dp));
      auto par = parity_report(l);
      const bool so = self_orthogonal(c) && self_orthogonal(dc);
      const bool sd = self_dual(c) && self_dual(dc);
      EXPECT_EQ(par.integral, so);
      EXPECT_EQ(par.unimodular, sd);
      auto ev = evenness(c, dc);
      EXPECT_EQ(par.even, ev.c_even && ev.d_even);
    }
  EXPECT_EQ(count, 10);
}

TEST(CodeLatticeDictionary, InnerProductCongruence) {
  for (std::int64_t p : {3, 5}) {
    Lattice amb = build_N_power(p, 1);
    for (KBits u = 0; u < (KBits{1} << (p - 1)); ++u)
      for (KBits v = 0; v < (KBits{1} << (p - 1)); ++v)
        for (int a = 0; a < p; ++a)
          for (int b = 0; b < p; ++b) {
            Rational ip = amb.inner(beta_vector(p, 1, u, {a}), beta_vector(p, 1, v, {b}));
            Rational expect = Rational(inner_k(p, 1, u, v), 2) +
                              Rational(inner_l(p, {a}, {b}), p);
            EXPECT_TRUE(is_integer(ip - expect));
          }
  }
}
