#include <gtest/gtest.h>

#include <random>

#include "qftv/anf.hpp"

using namespace qftv;

namespace {

constexpr int kVars = 10;

ExprId random_tree(ExprStore& s, std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int p = pick(rng);
  if (depth == 0 || p < 2) {
    if (p == 0) return s.constant(rng() & 1U);
    return s.var(std::uniform_int_distribution<int>(1, kVars)(rng));
  }
  const ExprId a = random_tree(s, rng, depth - 1);
  const ExprId b = random_tree(s, rng, depth - 1);
  switch (p % 4) {
    case 0: return s.mk_xor(a, b);
    case 1: return s.mk_and(a, b);
    case 2: return s.mk_or(a, b);
    default: return s.mk_not(a);
  }
}

/// ANF from a truth table via the binary Moebius transform. Bit v-1 of the
/// table index is the value of variable v.
AnfPoly anf_from_truth_table(std::vector<std::uint8_t> f, int vars) {
  for (int v = 0; v < vars; ++v) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (k & (std::size_t{1} << v)) f[k] ^= f[k ^ (std::size_t{1} << v)];
    }
  }
  std::vector<Monomial> terms;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!f[k]) continue;
    Monomial mono;
    for (int v = 0; v < vars; ++v) {
      if (k & (std::size_t{1} << v)) mono.push_back(static_cast<std::uint32_t>(v + 1));
    }
    terms.push_back(std::move(mono));
  }
  return AnfPoly::from_terms(std::move(terms));
}

Assignment assignment_of(std::size_t k, int vars) {
  Assignment a(vars);
  for (int v = 1; v <= vars; ++v) a.set(v, (k >> (v - 1)) & 1U);
  return a;
}

std::vector<std::uint8_t> truth_table(const ExprStore& s, ExprId id, int vars) {
  std::vector<std::uint8_t> f(std::size_t{1} << vars);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = s.eval(id, assignment_of(k, vars)) ? 1 : 0;
  return f;
}

}  // namespace

TEST(Anf, XorOfVariableWithItselfIsZero) {
  ExprStore s;
  const ExprId b1 = s.var(1);
  EXPECT_TRUE(anf_normalize(s, s.mk_xor(b1, b1)).is_zero());
}

TEST(Anf, AndOfVariableWithItsComplementIsZero) {
  ExprStore s;
  const ExprId b1 = s.var(1);
  const ExprId e = s.mk_and(b1, s.mk_xor(s.constant(true), b1));
  EXPECT_TRUE(anf_normalize(s, e).is_zero());
}

TEST(Anf, TermOrderIsDegreeThenLex) {
  ExprStore s;
  const ExprId e = s.mk_xor(s.mk_and(s.var(2), s.var(1)), s.mk_xor(s.var(3), s.constant(true)));
  const AnfPoly p = anf_normalize(s, e);
  EXPECT_EQ(p.to_string(), "1 ^ b3 ^ b1*b2");
  EXPECT_TRUE(p.has_constant());
  EXPECT_EQ(AnfPoly::zero().to_string(), "0");
}

TEST(Anf, FromTermsCancelsPairs) {
  const AnfPoly p = AnfPoly::from_terms({{1, 2}, {3}, {2, 1}, {3}, {3}});
  EXPECT_EQ(p, AnfPoly::variable(3));
}

TEST(Anf, OrExpandsToThreeTerms) {
  ExprStore s;
  EXPECT_EQ(anf_normalize(s, s.mk_or(s.var(1), s.var(2))), AnfPoly::from_terms({{1}, {2}, {1, 2}}));
}

TEST(Anf, BudgetOverflowThrows) {
  // (b1^b2^...^b12) & (b13^...^b24) has 144 monomials.
  ExprStore s;
  ExprId left = ExprStore::kFalse, right = ExprStore::kFalse;
  for (int v = 1; v <= 12; ++v) {
    left = s.mk_xor(left, s.var(v));
    right = s.mk_xor(right, s.var(v + 12));
  }
  const ExprId prod = s.mk_and(left, right);
  EXPECT_THROW(anf_normalize(s, prod, 100), AnfOverflow);
  EXPECT_EQ(anf_normalize(s, prod, 1000).size(), 144U);
}

TEST(Anf, NormalizerMemoizesAcrossRoots) {
  ExprStore s;
  const ExprId shared = s.mk_and(s.var(1), s.var(2));
  AnfNormalizer norm(s);
  const AnfPoly& a = norm.normalize(s.mk_xor(shared, s.var(3)));
  const AnfPoly& b = norm.normalize(shared);
  EXPECT_EQ(a, AnfPoly::from_terms({{3}, {1, 2}}));
  EXPECT_EQ(b, AnfPoly::from_terms({{1, 2}}));
}

TEST(AnfProperty, MatchesTruthTableOracle) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 400; ++trial) {
    ExprStore s;
    const ExprId e = random_tree(s, rng, 6);
    const auto f = truth_table(s, e, kVars);
    const AnfPoly p = anf_normalize(s, e);
    ASSERT_EQ(p, anf_from_truth_table(f, kVars)) << s.to_string(e);
    for (std::size_t k = 0; k < f.size(); k += 37) ASSERT_EQ(p.eval(assignment_of(k, kVars)), f[k] != 0);
  }
}

TEST(AnfProperty, EquivalentTreesNormalizeIdentically) {
  // Canonicity: equal ANF exactly when truth tables agree.
  std::mt19937 rng(7);
  int equal_pairs = 0;
  for (int trial = 0; trial < 400; ++trial) {
    ExprStore s;
    const ExprId a = random_tree(s, rng, 5);
    ExprId b = random_tree(s, rng, 5);
    if (trial % 2 == 0) {
      // Rewrite a as an equivalent but structurally different expression.
      const ExprId r = random_tree(s, rng, 3);
      b = s.mk_xor(s.mk_and(a, r), s.mk_and(a, s.mk_not(r)));
    }
    const bool same_function = truth_table(s, a, kVars) == truth_table(s, b, kVars);
    equal_pairs += same_function ? 1 : 0;
    ASSERT_EQ(anf_normalize(s, a) == anf_normalize(s, b), same_function);
  }
  EXPECT_GE(equal_pairs, 200);
}
