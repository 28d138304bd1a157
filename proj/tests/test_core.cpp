#include <gtest/gtest.h>

#include "hyperalg/core.hpp"
#include "hyperalg/fixtures.hpp"
#include "hyperalg/hyper.hpp"
#include "hyperalg/residue.hpp"
#include "oracle.hpp"

using namespace hyperalg;

namespace {

Pair sign_pair() { return build_hyperpair(builtin_hypermagma("sign")).to_pair(); }

}  // namespace

TEST(Monoid, CyclicGroupPasses) {
  FiniteMonoid z3 = cyclic_group(3);
  EXPECT_TRUE(check_monoid(z3).ok());
  EXPECT_TRUE(oracle::monoid_associative(z3.op));
}

TEST(Monoid, AssociativityWitness) {
  FiniteMonoid m{{"a", "b"}, Table::from_rows({{1, 0}, {0, 0}}), 0, std::nullopt};
  std::vector<int> first;
  for (int a = 0; a < 2 && first.empty(); ++a)
    for (int b = 0; b < 2 && first.empty(); ++b)
      for (int c = 0; c < 2 && first.empty(); ++c)
        if (m.op(m.op(a, b), c) != m.op(a, m.op(b, c))) first = {a, b, c};
  Report r = check_monoid(m);
  ASSERT_TRUE(r.violated("associativity"));
  EXPECT_EQ(r.find("associativity")->witness, first);
  EXPECT_FALSE(oracle::monoid_associative(m.op));
}

TEST(Monoid, FieldMultiplicativeMonoids) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    FiniteMonoid m = multiplicative_monoid(finite_field(q));
    EXPECT_TRUE(check_monoid(m).ok()) << q;
    EXPECT_TRUE(oracle::monoid_associative(m.op)) << q;
    EXPECT_TRUE(m.is_group_on_nonabsorbing()) << q;
  }
}

TEST(Monoid, MalformedTableIsInputError) {
  FiniteMonoid m{{"a"}, Table::from_rows({{3}}), 0, std::nullopt};
  EXPECT_THROW(check_monoid(m), InputError);
}

TEST(Module, FieldAndBoolean) {
  EXPECT_TRUE(check_module(field_module(finite_field(3))).ok());
  EXPECT_TRUE(check_module(boolean_module_trivial()).ok());
  EXPECT_TRUE(check_module(boolean_module()).ok());
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(check_module(boolean_power(k)).ok());
}

TEST(Module, SwappedActionBreaksZero) {
  TModule m = boolean_module_trivial();
  FiniteMonoid c2 = cyclic_group(2);
  m.left = Action{c2, Table::from_rows({{0, 1}, {1, 0}})};
  Report r = check_module(m);
  EXPECT_TRUE(r.violated("left.zero"));
}

TEST(Pair, ClassicalIsProper) {
  Pair p = classical_pair(field_module(finite_field(3)));
  p.embedding = std::vector<int>{0, 1, 2};
  Report r = check_pair(p);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.facts.at("proper"));
}

TEST(Pair, WholeCarrierNotProper) {
  Pair p = classical_pair(field_module(finite_field(3)));
  p.embedding = std::vector<int>{0, 1, 2};
  p.zero_set.assign(3, true);
  Report r = check_pair(p);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.facts.at("proper"));
}

TEST(Pair, ZeroSetNotClosed) {
  Pair p = classical_pair(field_module(finite_field(3)));
  p.zero_set = {false, true, false};
  Report r = check_pair(p);
  ASSERT_TRUE(r.violated("zero_set.add"));
  EXPECT_EQ(r.find("zero_set.add")->witness, (std::vector<int>{1, 1}));
}

TEST(Surpassing, EqualityAlwaysPasses) {
  for (const auto& m : {boolean_module(), field_module(finite_field(5)), cyclic_module(3)}) {
    Pair p = classical_pair(m);
    EXPECT_TRUE(check_surpassing(p, SurpassingRelation::equality(p.size())).ok());
  }
}

TEST(Surpassing, InclusionOnSignHyperpair) {
  Hyperpair h = build_hyperpair(builtin_hypermagma("sign"));
  Report r = check_surpassing(h.to_pair(), h.subset_order());
  EXPECT_TRUE(r.ok()) << r.summary();
  EXPECT_TRUE(r.facts.at("zero_set_upward_closed"));
}

TEST(Surpassing, TangibleRigidityWitness) {
  Hyperpair h = build_hyperpair(builtin_hypermagma("sign"));
  SurpassingRelation s = h.subset_order();
  s.set(h.index(singleton(1)), h.index(singleton(2)));
  EXPECT_TRUE(check_surpassing(h.to_pair(), s).violated("tangible_rigidity"));
}

TEST(PropertyN, Sign) {
  Hyperpair h = build_hyperpair(builtin_hypermagma("sign"));
  auto r = find_property_N(h.to_pair());
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(h.family[r.witnesses[0].pseudo_neg_one], singleton(2));
  EXPECT_EQ(h.family[r.witnesses[0].e], full_set(3));
}

TEST(PropertyN, AllSumHasWitnessPairSumHasNone) {
  for (int n = 2; n <= 5; ++n) {
    Hyperpair all = build_hyperpair(builtin_hypermagma("all_sum", n));
    auto r = find_property_N(all.to_pair());
    ASSERT_FALSE(r.witnesses.empty()) << n;
    for (const auto& w : r.witnesses) EXPECT_EQ(all.family[w.e], full_set(n));
    EXPECT_TRUE(find_property_N(build_hyperpair(builtin_hypermagma("pair_sum", n)).to_pair()).witnesses.empty())
        << n;
  }
}

TEST(CircDistributive, KrasnerAndSign) {
  for (const char* name : {"krasner", "sign"}) {
    Pair p = build_hyperpair(builtin_hypermagma(name)).to_pair();
    auto r = find_property_N(p);
    ASSERT_FALSE(r.witnesses.empty()) << name;
    for (const auto& w : r.witnesses) EXPECT_TRUE(check_circ_distributive(p, w).ok()) << name;
  }
}

TEST(CircDistributive, SignZeroSetIdempotent) {
  Hyperpair h = build_hyperpair(builtin_hypermagma("sign"));
  Pair p = h.to_pair();
  auto w = find_property_N(p).witnesses.at(0);
  Report r = check_circ_distributive(p, w);
  EXPECT_TRUE(r.facts.at("zero_set_idempotent"));
  // e ⊞ e by brute force.
  auto e = oracle::sum(h.base, {0, 1, 2}, {0, 1, 2});
  EXPECT_EQ(e, (oracle::Set{0, 1, 2}));
}

TEST(Submagma, Heights) {
  Hyperpair h = build_hyperpair(builtin_hypermagma("sign"));
  auto r = generated_submagma(h.to_pair());
  EXPECT_TRUE(r.admissible);
  EXPECT_EQ(r.height[h.index(full_set(3))], 2);
  EXPECT_EQ(r.height[h.index(singleton(1))], 1);
  EXPECT_EQ(r.height[h.zero_index()], 0);
}

TEST(Submagma, IsolatedElementHasInfiniteHeight) {
  // chain 0 < 1 < 2 with only 1 tangible: 2 is not a sum of tangibles.
  TModule m = chain_module(3);
  Pair p = classical_pair(m);
  p.embedding = std::vector<int>{1};
  auto r = generated_submagma(p);
  EXPECT_FALSE(r.admissible);
  EXPECT_FALSE(r.height[2].has_value());
  EXPECT_EQ(r.height[1], 1);
}

TEST(WeaklyNeutral, SignFamily) {
  Hypermagma s = builtin_hypermagma("sign");
  auto fam = weakly_neutral_family(s);
  EXPECT_NE(std::find(fam.begin(), fam.end(), singleton(0)), fam.end());
  EXPECT_NE(std::find(fam.begin(), fam.end(), full_set(3)), fam.end());
  for (Subset a : fam)
    for (Subset b : fam) EXPECT_NE(std::find(fam.begin(), fam.end(), powerset_add(s, a, b)), fam.end());
}
