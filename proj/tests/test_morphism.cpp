#include <gtest/gtest.h>

#include "hyperalg/fixtures.hpp"
#include "hyperalg/morphism.hpp"
#include "oracle.hpp"

using namespace hyperalg;

namespace {

OrderedPair hyper(const char* name) { return ordered_hyperpair(build_hyperpair(builtin_hypermagma(name))); }

bool left_equivariant(const std::vector<int>& f, const TModule& a, const TModule& b) {
  const Action& x = a.left_action();
  const Action& y = b.left_action();
  for (int t = 0; t < x.monoid.size(); ++t)
    for (int v = 0; v < a.size(); ++v)
      if (f[x(t, v)] != y(t, f[v])) return false;
  const Action& xr = a.right_action();
  const Action& yr = b.right_action();
  for (int t = 0; t < xr.monoid.size(); ++t)
    for (int v = 0; v < a.size(); ++v)
      if (f[xr(t, v)] != yr(t, f[v])) return false;
  return f[a.zero] == b.zero;
}

bool additive(const std::vector<int>& f, const TModule& a, const TModule& b) {
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (f[a.add(x, y)] != b.add(f[x], f[y])) return false;
  return true;
}

}  // namespace

TEST(Classify, IdentityHasEveryFlag) {
  for (const auto& p : {ordered_classical(builtin_module("F3")), hyper("sign"), hyper("krasner")}) {
    std::vector<int> id(p.size());
    for (int i = 0; i < p.size(); ++i) id[i] = i;
    auto m = classify(id, p, p);
    EXPECT_TRUE(m.flags.multiplicative && m.flags.homomorphism && m.flags.order_preserving && m.flags.colax &&
                m.flags.lax && m.flags.paired && m.flags.weak)
        << flags_label(m.flags);
  }
}

TEST(Classify, FlagsMatchBruteForce) {
  OrderedPair src = ordered_classical(builtin_module("B^2"));
  OrderedPair dst = ordered_classical(builtin_module("B"));
  oracle::for_each_map(src.size(), dst.size(), [&](const std::vector<int>& f) {
    auto m = classify(f, src, dst);
    bool mult = left_equivariant(f, src.module(), dst.module());
    EXPECT_EQ(m.flags.multiplicative, mult);
    EXPECT_EQ(m.flags.homomorphism, mult && additive(f, src.module(), dst.module()));
    bool paired = mult;
    for (int x = 0; x < src.size(); ++x)
      if (src.pair.zero_set[x] && !dst.pair.zero_set[f[x]]) paired = false;
    EXPECT_EQ(m.flags.paired, paired);
  });
}

TEST(Classify, LaxAndColaxMatchBruteForce) {
  for (const char* name : {"sign", "krasner"}) {
    OrderedPair p = hyper(name);
    const TModule& m = p.module();
    for (const auto& f : enumerate_multiplicative(p.pair, p.pair)) {
      bool mono = true, sub = true, super = true;
      for (int x = 0; x < m.size(); ++x)
        for (int y = 0; y < m.size(); ++y) {
          if (p.order(x, y) && !p.order(f[x], f[y])) mono = false;
          int l = f[m.add(x, y)], r = m.add(f[x], f[y]);
          sub = sub && p.order(l, r);
          super = super && p.order(r, l);
        }
      auto c = classify(f, p, p);
      EXPECT_EQ(c.flags.colax, mono && sub) << name;
      EXPECT_EQ(c.flags.lax, mono && super) << name;
    }
  }
}

TEST(Enumerate, MatchesBruteForce) {
  std::vector<std::pair<TModule, TModule>> cases = {
      {builtin_module("B"), builtin_module("B^2")},
      {builtin_module("B^2"), builtin_module("B")},
      {builtin_module("F3"), builtin_module("F3")},
      {builtin_module("krasner"), builtin_module("krasner")},
  };
  for (const auto& [a, b] : cases) {
    std::size_t mult = 0, hom = 0;
    oracle::for_each_map(a.size(), b.size(), [&](const std::vector<int>& f) {
      if (!left_equivariant(f, a, b)) return;
      ++mult;
      hom += additive(f, a, b);
    });
    EXPECT_EQ(enumerate_multiplicative(classical_pair(a), classical_pair(b)).size(), mult);
    EXPECT_EQ(enumerate_multiplicative(classical_pair(a), classical_pair(b), kDefaultMapCap, true).size(), hom);
  }
}

TEST(FlagChain, NoExceptionsOnFixtures) {
  std::vector<OrderedPair> pairs = {ordered_classical(builtin_module("B")), ordered_classical(builtin_module("B^2")),
                                    hyper("krasner"), hyper("sign"), ordered_classical(builtin_module("F3"))};
  for (const auto& s : pairs)
    for (const auto& d : pairs) {
      if (!(s.module().left_action().monoid == d.module().left_action().monoid)) continue;
      auto r = flag_chain_report(s, d);
      EXPECT_EQ(r.exceptions, 0u);
      EXPECT_LE(r.homomorphisms, r.maps);
    }
}

TEST(Hom, FieldEndomorphisms) {
  TModule f3 = builtin_module("F3");
  MapModule h = hom_bimagma(f3, f3);
  // f is fixed by f(1): the maps x ↦ cx.
  ASSERT_EQ(h.size(), 3);
  for (const auto& f : h.maps) {
    for (int x = 0; x < 3; ++x) EXPECT_EQ(f[x], f3.mul->operator()(f[1], x));
  }
  EXPECT_GE(h.index_of({0, 1, 2}), 0);
  EXPECT_TRUE(h.report.ok());
}

TEST(Hom, IntoOnePoint) {
  TModule b = builtin_module("B");
  TModule one = one_point_module();
  one.left = b.left;
  one.right = b.right;
  EXPECT_EQ(hom_bimagma(b, one).size(), 1);
}

TEST(WMor, SumClosedAndHomsWeak) {
  for (const auto& p : {ordered_classical(builtin_module("B")), hyper("krasner"), hyper("sign")}) {
    MapModule w = wmor_pair(p, p);
    EXPECT_TRUE(w.report.ok()) << w.report.summary();
    EXPECT_GE(w.size(), 1);
  }
}

TEST(TensorFreeMixed, IdentityFactors) {
  TModule f3 = builtin_module("F3");
  OrderedPair p = ordered_classical(f3);
  FreeCodec c = free_normal_form(f3, f3, {1});
  std::vector<int> id{0, 1, 2};
  auto m = tensor_free_mixed(id, id, c, p, p.pair, c, p, p.pair);
  EXPECT_TRUE(m.report.ok()) << m.report.summary();
  EXPECT_TRUE(m.flags.weak);
  EXPECT_EQ(m.map, (std::vector<int>{0, 1, 2}));
}

TEST(TensorPartial, LengthTwoIsUndefined) {
  TModule b = builtin_module("B"), b2 = builtin_module("B^2");
  OrderedPair p = ordered_classical(b);
  FreeCodec c = free_normal_form(b, b2, {b2.index_of("10"), b2.index_of("01")});
  OrderedPair cp = codec_pair(c, p, classical_pair(b2));
  std::vector<int> id_b{0, 1}, id_b2{0, 1, 2, 3};
  auto r = tensor_partial(id_b, id_b2, c, p, c, p, cp);
  int both = c.encode({1, 1});
  EXPECT_FALSE(r.value[both].has_value());
  EXPECT_EQ(r.value[c.encode({0, 0})], std::optional<int>(c.encode({0, 0})));
  EXPECT_EQ(r.value[c.encode({1, 0})], std::optional<int>(c.encode({1, 0})));
  EXPECT_TRUE(r.report.ok());
  EXPECT_TRUE(r.report.facts.at("defined_sum_below"));
}

TEST(MeetTensor, FieldOntoKrasner) {
  TModule f3 = builtin_module("F3");
  Tensor t = build_tensor(f3, f3, f3.left_action().monoid);
  Hyperpair k = build_hyperpair(builtin_hypermagma("krasner"));
  auto proj = [&](int x) { return x == 0 ? 0 : 1; };
  auto value = [&](int v, int w) { return k.index(singleton(proj(f3.mul->operator()(v, w)))); };
  MeetTensor m = meet_tensor(t, value, k);
  EXPECT_TRUE(m.report.ok()) << m.report.summary();
  EXPECT_EQ(m.meet[t.simple(1, 1)], singleton(1));
  EXPECT_EQ(m.meet[t.zero_class()], singleton(0));
  EXPECT_TRUE(set_tensor_law(t, m, k).ok());
  // The meet lies below every value reached by a representation.
  for (int c = 0; c < t.class_count(); ++c)
    for (Subset s : m.values[c]) EXPECT_TRUE(is_subset(m.meet[c], s));
}

TEST(ExtendWeak, SameMonoidCosets) {
  OrderedPair c = ordered_classical(chain_module(3));
  auto e = tensor_extend_weak({0, 1, 2}, c, c, trivial_monoid(), {0}, ExtensionMode::cosets);
  EXPECT_TRUE(e.report.ok()) << e.report.summary();
  EXPECT_TRUE(e.table.flags.weak);
  EXPECT_EQ(e.source.closure.class_count(), 3);
  EXPECT_EQ(e.map, (std::vector<int>{0, 1, 2}));
}

TEST(ExtendWeak, TwoCosets) {
  OrderedPair c = ordered_classical(chain_module(3));
  std::vector<int> f{0, 1, 0};
  ASSERT_TRUE(classify(f, c, c).flags.weak);
  auto e = tensor_extend_weak(f, c, c, cyclic_group(2), {0}, ExtensionMode::cosets);
  EXPECT_TRUE(e.report.ok()) << e.report.summary();
  // Per coset the summand is absent or one of three values; the empty sum is not a term.
  EXPECT_EQ(e.source.closure.class_count(), 4 * 4 - 1);
  EXPECT_TRUE(e.table.flags.weak);
}

TEST(ExtendWeak, BooleanMonoidHasNoCosetSplitting) {
  OrderedPair b = ordered_classical(builtin_module("B"));
  EXPECT_THROW(tensor_extend_weak({0, 1}, b, b, boolean_monoid(), {0, 1}, ExtensionMode::cosets), InputError);
}

TEST(Adjoint, WeakCountsAgree) {
  for (const char* name : {"B", "krasner"}) {
    OrderedPair p = std::string(name) == "B" ? ordered_classical(builtin_module("B")) : hyper(name);
    for (auto mode : {AdjointMode::weak, AdjointMode::colax}) {
      auto r = adjoint_wmor(p, p, p, mode);
      EXPECT_EQ(r.lhs, r.rhs) << name;
      EXPECT_TRUE(r.report.ok()) << name << ": " << r.report.summary();
    }
  }
}

TEST(Adjoint, SectionRankOne) {
  OrderedPair f3 = ordered_classical(builtin_module("F3"));
  auto r = adjoint_section(f3, f3, {1}, f3);
  EXPECT_GT(r.maps, 0u);
  EXPECT_EQ(r.identity, r.maps);
}

TEST(Pullback, ProjectionKernel) {
  TModule b2 = builtin_module("B^2");
  OrderedPair b = ordered_classical(builtin_module("B"));
  std::vector<int> proj(4);
  for (int x = 0; x < 4; ++x) proj[x] = b2.carrier[x][0] == '1' ? 1 : 0;
  auto pb = paired_pullback(proj, b2, b);
  for (int x = 0; x < 4; ++x) EXPECT_EQ(pb.pair.pair.zero_set[x], proj[x] == 0) << b2.carrier[x];
  EXPECT_TRUE(pb.table.flags.paired);

  Pair src = classical_pair(b2);
  auto im = image_pair(proj, src, b.module());
  EXPECT_TRUE(im.pair.pair.zero_set[0]);
  EXPECT_FALSE(im.pair.pair.zero_set[1]);
}
