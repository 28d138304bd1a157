#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "hyperalg/fixtures.hpp"
#include "hyperalg/tensor.hpp"
#include "oracle.hpp"

using namespace hyperalg;

namespace {

std::vector<int> iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Maps on classes additive for the closure's class table.
std::size_t additive_class_maps(const Tensor& t, const TModule& n) {
  std::size_t count = 0;
  const int c = t.class_count();
  oracle::for_each_map(c, n.size(), [&](const std::vector<int>& f) {
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b)
        if (f[t.closure.add(a, b)] != n.add(f[a], f[b])) return;
    ++count;
  });
  return count;
}

}  // namespace

TEST(TermSpace, CountsAndLookup) {
  TermSpace s(3, 3);
  // multisets of size 1..3 from 3 generators: 3 + 6 + 10
  EXPECT_EQ(s.size(), 19);
  EXPECT_DOUBLE_EQ(TermSpace::count(3, 3), 19.0);
  for (int id = 0; id < s.size(); ++id) {
    auto t = s.term(id);
    EXPECT_EQ(s.find(t), id);
    EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
  }
  EXPECT_EQ(s.extend(s.find(std::vector<int>{0, 1, 2}), 0), -1);
}

TEST(Congruence, IdempotentGenerator) {
  // g + g = g collapses every multiset of g into one class.
  auto c = close_congruence(1, {{{0, 0}, {0}}}, 4);
  EXPECT_TRUE(c.saturated);
  EXPECT_EQ(c.class_count(), 1);
  EXPECT_EQ(c.classify({0, 0, 0, 0, 0, 0}), std::optional<int>(0));
}

TEST(Tensor, BooleanTimesBoolean) {
  TModule b = boolean_module();
  Tensor t = build_tensor(b, b, boolean_monoid());
  ASSERT_TRUE(t.saturated());
  EXPECT_EQ(t.class_count(), 2);
  EXPECT_NE(t.simple(1, 1), t.zero_class());
  EXPECT_EQ(t.simple(0, 1), t.zero_class());
}

TEST(Tensor, CyclicTwo) {
  Tensor t = build_tensor(cyclic_module(2), cyclic_module(2), trivial_monoid());
  ASSERT_TRUE(t.saturated());
  EXPECT_EQ(t.class_count(), 2);
}

TEST(Tensor, BalancedMapsMatchAdditiveClassMaps) {
  for (const auto& fx : tensor_fixtures()) {
    Tensor t = build_tensor(fx.m1, fx.m2, fx.over);
    ASSERT_TRUE(t.saturated()) << fx.name;
    if (t.class_count() > 6) continue;
    std::vector<int> ids = iota(fx.over.size());
    for (const auto& n : default_oracle_targets()) {
      if (std::pow(double(n.size()), fx.m1.size() * fx.m2.size()) > 5e6) continue;
      EXPECT_EQ(oracle::balanced_maps(fx.m1, fx.m2, fx.over, n, ids, ids), additive_class_maps(t, n))
          << fx.name << " -> " << n.size();
    }
    EXPECT_TRUE(universal_property_oracle(t, default_oracle_targets()).ok()) << fx.name;
  }
}

TEST(Tensor, SimpleTensorsGenerate) {
  for (const auto& fx : tensor_fixtures()) {
    Tensor t = build_tensor(fx.m1, fx.m2, fx.over);
    std::set<int> reached;
    for (int i = 0; i < fx.m1.size(); ++i)
      for (int j = 0; j < fx.m2.size(); ++j) reached.insert(t.simple(i, j));
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<int> cur(reached.begin(), reached.end());
      for (int a : cur)
        for (int b : cur) grew |= reached.insert(t.closure.add(a, b)).second;
    }
    EXPECT_EQ(static_cast<int>(reached.size()), t.class_count()) << fx.name;
  }
}

TEST(Tensor, ToModuleIsAModule) {
  for (const auto& fx : tensor_fixtures()) {
    Report r;
    TModule m = build_tensor(fx.m1, fx.m2, fx.over).to_module(&r);
    EXPECT_TRUE(r.ok()) << fx.name;
    EXPECT_TRUE(check_module(m).ok()) << fx.name;
  }
}

TEST(FreeCodec, FieldAndBooleanPowers) {
  TModule f3 = field_module(finite_field(3));
  Tensor t = build_tensor(f3, f3, multiplicative_monoid(finite_field(3)));
  FreeCodec c = free_normal_form(f3, f3, {1});
  EXPECT_TRUE(compare_codec(t, c).ok());
  EXPECT_EQ(c.vector_count(), 3);

  TModule b = boolean_module(), b2 = boolean_power(2);
  Tensor t2 = build_tensor(b, b2, boolean_monoid());
  FreeCodec c2 = free_normal_form(b, b2, {b2.index_of("10"), b2.index_of("01")});
  EXPECT_EQ(c2.rank(), 2);
  EXPECT_TRUE(compare_codec(t2, c2).ok());
  EXPECT_EQ(t2.class_count(), 4);
  for (int x = 0; x < c2.vector_count(); ++x) EXPECT_EQ(c2.encode(c2.decode(x)), x);
}

TEST(FreeCodec, TrivialMonoidKeepsZeroTensorsApart) {
  // {1} is a free base of B over {1} with 𝟘 the empty sum, but 𝟘⊗1, 1⊗𝟘 and their sum stay distinct classes.
  TModule b = boolean_module_trivial();
  ASSERT_TRUE(is_free_base(b, {1}));
  EXPECT_EQ(build_tensor(b, b, trivial_monoid()).class_count(), 5);
  EXPECT_THROW(free_normal_form(b, b, {1}), InputError);
}

TEST(FreeCodec, NonBaseRejected) {
  TModule b = boolean_module(), b2 = boolean_power(2);
  EXPECT_THROW(free_normal_form(b, b2, {b2.index_of("11")}), InputError);
}

TEST(Isomorphisms, AssocCommDist) {
  auto cases = check_assoc_comm_dist();
  EXPECT_FALSE(cases.empty());
  for (const auto& c : cases) {
    EXPECT_FALSE(c.undetermined) << c.name;
    EXPECT_TRUE(c.report.ok()) << c.name << ": " << c.report.summary();
  }
}

TEST(Isomorphisms, DirectSumOverTrivialMonoidSplitsZero) {
  TModule b = boolean_module_trivial();
  IsoCase c = check_direct_sum_iso(b, b, b, true, trivial_monoid());
  ASSERT_FALSE(c.undetermined);
  EXPECT_FALSE(c.report.ok());
  Tensor lhs = build_tensor(direct_sum(b, b), b, trivial_monoid());
  Tensor rhs = build_tensor(b, b, trivial_monoid());
  EXPECT_EQ(lhs.class_count(), 13);
  EXPECT_EQ(rhs.class_count() * rhs.class_count(), 25);
}

TEST(MonoidTensor, TrivialOverSelf) {
  FiniteMonoid c2 = cyclic_group(2);
  // C2 ⊗_{C2} C2 ≅ C2
  MonoidTensor mt = monoid_tensor(c2, c2, c2, {0, 1}, {0, 1});
  EXPECT_EQ(mt.class_count(), 2);
  ASSERT_TRUE(mt.monoid.has_value());
  EXPECT_TRUE(check_monoid(*mt.monoid).ok());
  // Over the trivial monoid nothing slides.
  MonoidTensor free = monoid_tensor(c2, c2, trivial_monoid(), {0}, {0});
  EXPECT_EQ(free.class_count(), 4);
}

TEST(Extension, SameMonoidIsIsomorphic) {
  TModule b = boolean_module();
  Extension e = tensor_extension(boolean_monoid(), {0, 1}, b, true);
  Report r;
  TModule m = e.to_module(&r);
  EXPECT_EQ(m.size(), b.size());
  EXPECT_TRUE(check_module(m).ok());
}

TEST(Extension, OnePointTarget) {
  FiniteMonoid b = boolean_monoid();
  TModule one = one_point_module();
  one.left = Action{b, Table(b.size(), 1, 0)};
  Extension e = tensor_extension(b, {0, 1}, one, true);
  EXPECT_EQ(e.closure.class_count(), 1);
}

TEST(NRTensor, AdditionFromDefinition) {
  Hypermagma h = builtin_hypermagma("tropical_chain", 2);
  NRTensor t = nr_tensor(h, h);
  const int n = h.size();
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      const int a = x / n, b = x % n, c = y / n, d = y % n;
      oracle::Set expect;
      if (b == d)
        for (int s : oracle::entry(h, a, c)) expect.insert(s * n + b);
      if (a == c)
        for (int s : oracle::entry(h, b, d)) expect.insert(a * n + s);
      const auto got = members(nr_add(t, x, y));
      EXPECT_EQ(oracle::Set(got.begin(), got.end()), expect);
    }
  // Mixed simple tensors have no sum.
  int v = h.index_of("1"), w = h.index_of("2");
  EXPECT_EQ(nr_add(t, t.simple(v, v), t.simple(w, w)), 0u);
}

TEST(NRTensor, NotAssociative) {
  NRWitness w = nr_assoc_counterexample();
  EXPECT_NE(w.first, w.second);
  EXPECT_FALSE(oracle::associative(w.tensor.hypermagma()));
}

TEST(ResidueTensor, F3ByUnits) {
  TModule f3 = builtin_module("F3");
  auto g = subgroup(f3.left_action().monoid, {"1", "2"});
  TensorOptions o;
  o.bound = 3;
  ResidueTensorIso iso = residue_tensor_iso(f3, g, f3, g, o);
  ASSERT_FALSE(iso.undetermined);
  EXPECT_TRUE(iso.report.ok()) << iso.report.summary();
  EXPECT_EQ(iso.lhs.class_count(), iso.rhs.size());
}

TEST(SubsetDistributivity, KrasnerAndSign) {
  for (const char* name : {"krasner", "sign"}) {
    Hyperpair p = build_hyperpair(builtin_hypermagma(name));
    TensorOptions o;
    o.bound = 3;
    Tensor t = hyperpair_tensor(p, p, o);
    if (!t.saturated()) continue;
    EXPECT_TRUE(subset_distributivity(p, p, t).ok()) << name;
  }
}

TEST(Recombination, BooleanSquare) {
  TModule b2 = boolean_power(2);
  Tensor t = build_tensor(b2, b2, boolean_monoid());
  ASSERT_TRUE(t.saturated());
  auto r = recombination_chain(t, b2.index_of("10"), b2.index_of("01"));
  EXPECT_EQ(r.steps.size(), r.classes.size());
  EXPECT_TRUE(r.report.ok()) << r.report.summary();
  for (int c : r.classes) EXPECT_EQ(c, r.classes.front());
  EXPECT_EQ(r.v3, b2.index_of("11"));
}
