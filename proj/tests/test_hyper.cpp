#include <gtest/gtest.h>

#include "hyperalg/hyper.hpp"
#include "oracle.hpp"

using namespace hyperalg;

namespace {

oracle::Set family_set(Subset s) {
  oracle::Set out;
  for (int x : members(s)) out.insert(x);
  return out;
}

}  // namespace

TEST(Powerset, SignOnePlusMinusOne) {
  Hypermagma s = builtin_hypermagma("sign");
  EXPECT_EQ(powerset_add(s, singleton(1), singleton(2)), full_set(3));
  EXPECT_EQ(powerset_add(s, singleton(2), singleton(1)), full_set(3));
}

TEST(Powerset, EmptyAbsorbsAndZeroIsNeutral) {
  for (const auto& name : builtin_hypermagma_names()) {
    Hypermagma h = builtin_hypermagma(name, name == "mass_c" ? 4 : 3);
    for (Subset s = 0; s <= full_set(h.size()); ++s) {
      EXPECT_EQ(powerset_add(h, 0, s), 0u) << name;
      EXPECT_EQ(powerset_add(h, s, 0), 0u) << name;
      if (h.zero) EXPECT_EQ(powerset_add(h, singleton(*h.zero), s), s) << name;
    }
  }
}

TEST(Hyperpair, KrasnerFamily) {
  Hyperpair k = build_hyperpair(builtin_hypermagma("krasner"));
  std::set<Subset> fam(k.family.begin(), k.family.end());
  EXPECT_EQ(fam, (std::set<Subset>{singleton(0), singleton(1), full_set(2)}));
  EXPECT_TRUE(k.closure_report.ok());
}

TEST(Hyperpair, SignFamilyMatchesClosure) {
  Hypermagma s = builtin_hypermagma("sign");
  Hyperpair h = build_hyperpair(s);
  auto expect = oracle::closure(s, {{0}, {1}, {2}});
  std::set<oracle::Set> got;
  for (Subset x : h.family) got.insert(family_set(x));
  EXPECT_EQ(got, expect);
  EXPECT_EQ(h.size(), 4);
}

TEST(Hyperpair, AllSumFamily) {
  for (int n = 2; n <= 5; ++n) {
    Hyperpair h = build_hyperpair(builtin_hypermagma("all_sum", n));
    EXPECT_EQ(h.size(), n + 1) << n;
    EXPECT_GE(h.index(full_set(n)), 0);
    EXPECT_TRUE(h.zero_family[h.index(full_set(n))]);
  }
}

TEST(Hypersemigroup, TropicalChain) {
  for (int k = 1; k <= 5; ++k) {
    Hypermagma h = builtin_hypermagma("tropical_chain", k);
    EXPECT_TRUE(check_hypersemigroup(h).ok()) << k;
    EXPECT_TRUE(oracle::associative(h)) << k;
  }
}

TEST(Hypersemigroup, SignAndBuiltinsAgreeWithOracle) {
  for (const auto& name : builtin_hypermagma_names())
    for (int n = 2; n <= 5; ++n) {
      Hypermagma h;
      try {
        h = builtin_hypermagma(name, n);
      } catch (const InputError&) {
        continue;
      }
      EXPECT_EQ(!check_hypersemigroup(h).violated("associativity"), oracle::associative(h)) << name << n;
      EXPECT_EQ(check_hypergroup(h).ok(), oracle::hypergroup(h)) << name << n;
    }
}

TEST(Hypersemigroup, EmptySumVariantReportsOrPasses) {
  Hypermagma h = builtin_hypermagma("empty_sum", 3);
  EXPECT_EQ(!check_hypersemigroup(h).violated("associativity"), oracle::associative(h));
}

TEST(Hypergroup, MassB) {
  for (int n = 3; n <= 6; ++n) EXPECT_TRUE(check_hypergroup(builtin_hypermagma("mass_b", n)).ok()) << n;
}

TEST(Hypergroup, IdemNotUniquelyNegated) {
  for (int n : {2, 4, 5}) EXPECT_FALSE(oracle::uniquely_negated(builtin_hypermagma("idem", n))) << n;
  // |H| = 3 is the exception found by brute force.
  EXPECT_TRUE(oracle::uniquely_negated(builtin_hypermagma("idem", 3)));
}

TEST(Hypergroup, KrasnerSelfNegative) {
  std::vector<int> neg;
  Hypermagma k = builtin_hypermagma("krasner");
  ASSERT_TRUE(check_hypergroup(k, &neg).ok());
  EXPECT_EQ(neg[1], 1);
}

TEST(Hyperfield, SignAndKrasner) {
  EXPECT_TRUE(check_hyperfield(builtin_hypermagma("sign")).ok());
  EXPECT_TRUE(check_hyperfield(builtin_hypermagma("krasner")).ok());
}

TEST(Hyperfield, NonInvertibleElement) {
  Hypermagma k = builtin_hypermagma("krasner");
  k.mul = Table::from_rows({{0, 0}, {0, 0}});
  EXPECT_FALSE(check_hyperfield(k).ok());
}

TEST(Builtin, Tables) {
  Hypermagma s = builtin_hypermagma("sign");
  EXPECT_EQ(s.size(), 3);
  Hypermagma a = builtin_hypermagma("mass_a", 3);
  for (int x = 1; x < 3; ++x) EXPECT_EQ(a.add(x, x), singleton(0) | singleton(x));
  Hypermagma all = builtin_hypermagma("all_sum", 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      if (x && y) EXPECT_EQ(all.add(x, y), full_set(2));
  EXPECT_THROW(builtin_hypermagma("nope"), InputError);
  EXPECT_THROW(builtin_hypermagma("mass_c", 3), InputError);
}

TEST(Census, OrderOneIsTrivial) {
  auto r = census(1, Suite::hypergroup);
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_EQ(r.tables[0].table, std::vector<Subset>{singleton(0)});
}

TEST(Census, OrderTwoContainsKrasnerAndMatchesOracle) {
  auto semi = census(2, Suite::hypersemigroup);
  auto group = census(2, Suite::hypergroup);
  EXPECT_GE(semi.tables.size(), group.tables.size());
  Hypermagma k = builtin_hypermagma("krasner");
  k.mul.reset();
  k.one.reset();
  bool found = false;
  for (const auto& h : group.tables) {
    found = found || h.table == k.table;
    EXPECT_TRUE(oracle::hypergroup(h));
  }
  EXPECT_TRUE(found);
}

TEST(Census, Deterministic) {
  auto a = census(3, Suite::hypergroup, 1), b = census(3, Suite::hypergroup, 4);
  ASSERT_EQ(a.tables.size(), b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) EXPECT_EQ(a.tables[i], b.tables[i]);
  for (const auto& h : a.tables) EXPECT_TRUE(check_hypergroup(h).ok());
}

TEST(Census, CanonicalFormIsInvariant) {
  for (const auto& h : census(3, Suite::hypersemigroup).tables) EXPECT_EQ(canonical_form(h), h);
}
