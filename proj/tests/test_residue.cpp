#include <gtest/gtest.h>

#include <set>

#include "hyperalg/fixtures.hpp"
#include "hyperalg/residue.hpp"
#include "oracle.hpp"

using namespace hyperalg;

namespace {

// Every subgroup of F_q^× as element-index lists, by brute force over subsets of the nonzero elements.
std::vector<std::vector<int>> subgroups_of(const FiniteField& f) {
  std::vector<std::vector<int>> out;
  const int n = f.order - 1;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> g;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) g.push_back(i + 1);
    std::set<int> in(g.begin(), g.end());
    if (!in.count(1)) continue;
    bool closed = true;
    for (int a : g)
      for (int b : g) closed = closed && in.count(f.mul(a, b));
    if (closed) out.push_back(g);
  }
  return out;
}

Subgroup group_of(const FiniteField& f, const std::vector<int>& members) {
  return {multiplicative_monoid(f), members};
}

}  // namespace

TEST(Field, TablesSatisfyFieldAxioms) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    FiniteField f = finite_field(q);
    ASSERT_EQ(f.order, q);
    for (int a = 0; a < q; ++a) {
      EXPECT_EQ(f.add(0, a), a);
      EXPECT_EQ(f.mul(1, a), a);
      if (a) {
        int inv = 0;
        for (int b = 1; b < q; ++b) inv += f.mul(a, b) == 1;
        EXPECT_EQ(inv, 1) << q << " " << a;
      }
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c) {
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
          EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        }
    }
  }
}

TEST(Residue, KrasnerFromF3) {
  TModule f3 = builtin_module("F3");
  auto r = residue(f3, subgroup(f3.left_action().monoid, {"1", "2"}));
  ASSERT_EQ(r.classes.size(), 2u);
  EXPECT_EQ(r.classes[r.projection[0]], std::vector<int>{0});
  EXPECT_EQ(r.classes[r.projection[1]], (std::vector<int>{1, 2}));
  int one = r.projection[1], zero = r.projection[0];
  EXPECT_EQ(r.hypermagma.add(one, one), singleton(zero) | singleton(one));
}

TEST(Residue, TrivialSubgroupIsTheField) {
  FiniteField f2 = finite_field(2);
  auto r = residue(field_module(f2), group_of(f2, {1}));
  ASSERT_EQ(r.classes.size(), 2u);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      EXPECT_EQ(r.hypermagma.add(r.projection[a], r.projection[b]), singleton(r.projection[f2.add(a, b)]));
}

TEST(Residue, CosetTablesMatchBruteForce) {
  for (int q : {3, 4, 5, 7, 8, 9}) {
    FiniteField f = finite_field(q);
    for (const auto& g : subgroups_of(f)) {
      auto r = residue(field_module(f), group_of(f, g));
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) {
          Subset expect = 0;
          for (int g1 : g)
            for (int g2 : g) expect |= singleton(r.projection[f.add(f.mul(x, g1), f.mul(y, g2))]);
          EXPECT_EQ(r.hypermagma.add(r.projection[x], r.projection[y]), expect) << q;
        }
    }
  }
}

TEST(Residue, EveryQuotientIsAHyperfield) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    FiniteField f = finite_field(q);
    for (const auto& g : subgroups_of(f)) {
      auto r = residue(field_module(f), group_of(f, g));
      EXPECT_TRUE(check_hyperfield(r.hypermagma).ok()) << q << " |G|=" << g.size();
      EXPECT_EQ(check_hypergroup(r.hypermagma).ok(), oracle::hypergroup(r.hypermagma));
    }
  }
}

TEST(Residue, F5BySquares) {
  FiniteField f5 = finite_field(5);
  auto r = residue(field_module(f5), group_of(f5, {1, 4}));
  EXPECT_EQ(r.classes.size(), 3u);
  EXPECT_TRUE(check_hyperfield(r.hypermagma).ok());
}

TEST(Residue, NonSubgroupRejected) {
  FiniteField f5 = finite_field(5);
  EXPECT_THROW(residue(field_module(f5), group_of(f5, {1, 2})), InputError);
}

TEST(ResidueConstants, Krasner) {
  TModule f3 = builtin_module("F3");
  auto g = subgroup(f3.left_action().monoid, {"1", "2"});
  auto r = residue(f3, g);
  auto c = residue_constants(f3, g, r);
  EXPECT_EQ(c.e, full_set(2));
  EXPECT_EQ(c.ee, c.e_plus_e);
  EXPECT_TRUE(c.report.ok());
}

TEST(ResidueConstants, EveryQuotient) {
  for (int q : {3, 4, 5, 7, 8, 9}) {
    FiniteField f = finite_field(q);
    TModule m = field_module(f);
    for (const auto& g : subgroups_of(f)) {
      auto r = residue(m, group_of(f, g));
      auto c = residue_constants(m, group_of(f, g), r);
      EXPECT_EQ(c.ee, c.e_plus_e) << q;
      // e = {class(g₁ − g₂)} computed from the field tables.
      Subset e = 0;
      int minus_one = 0;
      for (int x = 0; x < q; ++x)
        if (f.add(1, x) == 0) minus_one = x;
      for (int g1 : g)
        for (int g2 : g) e |= singleton(r.projection[f.add(g1, f.mul(minus_one, g2))]);
      EXPECT_EQ(c.e, e) << q;
    }
  }
}

TEST(ResidueConstants, TrivialSubgroup) {
  FiniteField f3 = finite_field(3);
  TModule m = field_module(f3);
  auto r = residue(m, group_of(f3, {1}));
  auto c = residue_constants(m, group_of(f3, {1}), r);
  EXPECT_EQ(c.e, singleton(r.projection[0]));
}

TEST(InducedSurpassing, EqualityStaysEquality) {
  TModule f3 = builtin_module("F3");
  auto g = subgroup(f3.left_action().monoid, {"1", "2"});
  auto s = induced_surpassing(classical_pair(f3), SurpassingRelation::equality(3), g);
  EXPECT_EQ(s.on_classes, SurpassingRelation::equality(2));
}

TEST(ResidueFreeBase, RankTwoOverF3) {
  TModule m = builtin_module("F3^2");
  std::vector<int> base;
  for (int x = 0; x < m.size(); ++x)
    if (m.carrier[x] == "(1,0)" || m.carrier[x] == "(0,1)") base.push_back(x);
  ASSERT_EQ(base.size(), 2u);
  auto g = subgroup(m.left_action().monoid, {"1", "2"});
  auto r = residue_free_base(m, base, g);
  EXPECT_TRUE(r.report.ok()) << r.report.summary();
  EXPECT_EQ(r.base_classes.size(), 2u);
}

TEST(ResidueFreeBase, RankOneClassCount) {
  for (int q : {3, 5, 7}) {
    FiniteField f = finite_field(q);
    for (const auto& g : subgroups_of(f)) {
      auto r = residue(field_module(f), group_of(f, g));
      EXPECT_EQ(r.classes.size(), (q - 1) / g.size() + 1);
    }
  }
}
