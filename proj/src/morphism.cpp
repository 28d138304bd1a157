#include "hyperalg/morphism.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include "hyperalg/residue.hpp"

namespace hyperalg {

namespace {

// Backtracking over maps [0, n) -> [0, k); each check runs once its last index is assigned.
class MapSearch {
 public:
  using Check = std::function<bool(const std::vector<int>&)>;

  MapSearch(int n, int k, double cap) : n_(n), k_(k), cap_(cap), bucket_(n), domain_(n) {
    for (auto& d : domain_)
      for (int x = 0; x < k; ++x) d.push_back(x);
  }

  void restrict(int i, std::vector<int> values) { domain_[i] = std::move(values); }
  void add(int at, Check check) { bucket_[at].push_back(std::move(check)); }

  std::vector<std::vector<int>> run() {
    std::vector<std::vector<int>> out;
    if (n_ == 0) {
      out.emplace_back();
      return out;
    }
    std::vector<int> val(n_, 0);
    double nodes = 0;
    std::function<void(int)> rec = [&](int i) {
      if (i == n_) {
        out.push_back(val);
        return;
      }
      for (int x : domain_[i]) {
        if (++nodes > cap_) throw CapExceeded("map enumeration exceeds cap", nodes, cap_);
        val[i] = x;
        bool ok = true;
        for (const auto& c : bucket_[i])
          if (!c(val)) {
            ok = false;
            break;
          }
        if (ok) rec(i + 1);
      }
    };
    rec(0);
    return out;
  }

 private:
  int n_, k_;
  double cap_;
  std::vector<std::vector<Check>> bucket_;
  std::vector<std::vector<int>> domain_;
};

void require_same_monoids(const TModule& a, const TModule& b) {
  if (!(a.left_action().monoid == b.left_action().monoid) || !(a.right_action().monoid == b.right_action().monoid))
    throw InputError("source and target act by different monoids");
}

// Multiplicativity constraints for maps src -> dst, written into a search.
void add_multiplicative(MapSearch& s, const TModule& src, const TModule& dst) {
  s.restrict(src.zero, {dst.zero});
  for (int side = 0; side < 2; ++side) {
    const Action& a = side == 0 ? src.left_action() : src.right_action();
    const Action& b = side == 0 ? dst.left_action() : dst.right_action();
    for (int t = 0; t < a.monoid.size(); ++t)
      for (int x = 0; x < src.size(); ++x) {
        const int y = a(t, x);
        s.add(std::max(x, y), [&b, t, x, y](const std::vector<int>& f) { return f[y] == b(t, f[x]); });
      }
  }
}

// Pairs (Σxᵢ, Σf(xᵢ)) reachable from (x, f(x)); weak iff none has x ∈ A₀ and y ∉ A₀′.
std::optional<std::pair<int, int>> zero_sum_witness(const std::vector<int>& f, const Pair& src, const Pair& dst) {
  const int n = src.size(), k = dst.size();
  std::vector<char> seen(static_cast<std::size_t>(n) * k, 0);
  std::vector<std::pair<int, int>> queue;
  for (int x = 0; x < n; ++x) {
    auto& s = seen[static_cast<std::size_t>(x) * k + f[x]];
    if (!s) {
      s = 1;
      queue.emplace_back(x, f[x]);
    }
  }
  const std::size_t seeds = queue.size();
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto [x, y] = queue[q];
    if (src.zero_set[x] && !dst.zero_set[y]) return std::pair{x, y};
    for (std::size_t r = 0; r < seeds; ++r) {
      int xx = src.module.add(x, queue[r].first), yy = dst.module.add(y, queue[r].second);
      auto& s = seen[static_cast<std::size_t>(xx) * k + yy];
      if (!s) {
        s = 1;
        queue.emplace_back(xx, yy);
      }
    }
  }
  return std::nullopt;
}

std::string map_label(const std::vector<int>& f, const TModule& dst) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + dst.carrier[f[i]];
  return s + "]";
}

// Pointwise structure on a list of maps src -> dst.
MapModule pointwise(std::vector<std::vector<int>> maps, const OrderedPair& src, const OrderedPair& dst,
                    Checker& chk) {
  MapModule out;
  out.maps = std::move(maps);
  for (int i = 0; i < out.size(); ++i) out.lookup.emplace(out.maps[i], i);
  const TModule& d = dst.module();
  const int n = src.size(), k = out.size();
  std::vector<int> zero_map(n, d.zero);
  int zero = out.index_of(zero_map);
  chk.axiom("zero_map_present");
  if (zero < 0) {
    chk.fail("zero_map_present", {});
    throw InputError("map set does not contain the constant 𝟘 map");
  }
  TModule m;
  for (const auto& f : out.maps) m.carrier.push_back(map_label(f, d));
  m.zero = zero;
  m.add = Table(k, k, zero);
  chk.axiom("sum_closed");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      std::vector<int> s(n);
      for (int b = 0; b < n; ++b) s[b] = d.add(out.maps[i][b], out.maps[j][b]);
      int idx = out.index_of(s);
      if (chk.expect(idx >= 0, "sum_closed", {i, j})) m.add(i, j) = idx;
    }
  auto act = [&](const Action& a, const char* tag) {
    Table tab(a.monoid.size(), k, zero);
    chk.axiom(tag);
    for (int t = 0; t < a.monoid.size(); ++t)
      for (int i = 0; i < k; ++i) {
        std::vector<int> s(n);
        for (int b = 0; b < n; ++b) s[b] = a(t, out.maps[i][b]);
        int idx = out.index_of(s);
        if (chk.expect(idx >= 0, tag, {t, i})) tab(t, i) = idx;
      }
    return Action{a.monoid, tab};
  };
  m.left = act(d.left_action(), "left_action_closed");
  if (d.right) m.right = act(*d.right, "right_action_closed");
  out.pair.pair.module = m;
  out.pair.pair.zero_set.assign(k, false);
  out.pair.order.n = k;
  out.pair.order.rel.assign(static_cast<std::size_t>(k) * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      bool le = true;
      for (int b = 0; b < n && le; ++b) le = dst.order(out.maps[i][b], out.maps[j][b]);
      out.pair.order.set(i, j, le);
    }
  for (int i = 0; i < k; ++i) {
    bool z = true;
    for (int b = 0; b < n && z; ++b) z = dst.pair.zero_set[out.maps[i][b]];
    out.pair.pair.zero_set[i] = z;
  }
  chk.report().merge(check_module(m), "module");
  chk.report().merge(check_pair(out.pair.pair), "pair");
  return out;
}

// Coordinates of a codec vector that differ from 𝟘.
std::vector<int> support(const FreeCodec& c, int x) {
  std::vector<int> out;
  auto v = c.decode(x);
  for (int j = 0; j < c.rank(); ++j)
    if (v[j] != c.m1.zero) out.push_back(j);
  return out;
}

int unit_vector(const FreeCodec& c, int j, int v) {
  std::vector<int> x(c.rank(), c.m1.zero);
  x[j] = v;
  return c.encode(x);
}

std::vector<std::vector<int>> transpose_rows(const std::vector<int>& f, int n1, int n2) {
  std::vector<std::vector<int>> cols(n2, std::vector<int>(n1));
  for (int v = 0; v < n1; ++v)
    for (int w = 0; w < n2; ++w) cols[w][v] = f[v * n2 + w];
  return cols;
}

// Pair on the classes of an extension: zero set from generators (a′, y) with y ∈ A₀, order generated by x ⪯ y.
OrderedPair extension_pair(const Extension& e, const OrderedPair& base) {
  OrderedPair out;
  out.pair.module = e.to_module();
  const int n = base.size(), k = e.closure.class_count();
  std::vector<bool> zero(k, false);
  std::vector<int> queue;
  for (int g = 0; g < e.tprime.size() * n; ++g)
    if (base.pair.zero_set[g % n]) {
      int c = e.closure.generator_class(g);
      if (!zero[c]) {
        zero[c] = true;
        queue.push_back(c);
      }
    }
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t r = 0; r <= q; ++r) {
      int s = e.closure.add(queue[q], queue[r]);
      if (!zero[s]) {
        zero[s] = true;
        queue.push_back(s);
      }
    }
  out.pair.zero_set = zero;
  out.order = generated_order(e.closure, [&](int g, int h) { return g / n == h / n && base.order(g % n, h % n); });
  return out;
}

}  // namespace

// ---------------------------------------------------------------- ordered pairs

OrderedPair ordered_classical(const TModule& m) {
  return {classical_pair(m), SurpassingRelation::equality(m.size()), std::nullopt};
}

OrderedPair ordered_hyperpair(const Hyperpair& h) { return {h.to_pair(), h.subset_order(), h}; }

OrderedPair ordered(const Pair& p, SurpassingRelation order) {
  if (order.n != p.size()) throw InputError("relation does not match the pair carrier");
  return {p, std::move(order), std::nullopt};
}

std::string flags_label(const MorphismFlags& f) {
  std::string s;
  auto put = [&](bool on, const char* name) {
    if (on) s += (s.empty() ? "" : ",") + std::string(name);
  };
  put(f.multiplicative, "multiplicative");
  put(f.homomorphism, "homomorphism");
  put(f.colax, "colax");
  put(f.lax, "lax");
  put(f.paired, "paired");
  put(f.weak, "weak");
  return s.empty() ? "none" : s;
}

// ---------------------------------------------------------------- classify

MorphismTable classify(const std::vector<int>& f, const OrderedPair& src, const OrderedPair& dst) {
  const TModule& a = src.module();
  const TModule& b = dst.module();
  const int n = a.size();
  if (static_cast<int>(f.size()) != n) throw InputError("map is not total on the source carrier");
  for (int v : f)
    if (v < 0 || v >= b.size()) throw InputError("map value out of range");
  MorphismTable out;
  out.map = f;
  Checker chk;

  chk.axiom("multiplicative");
  bool same = a.left_action().monoid == b.left_action().monoid && a.right_action().monoid == b.right_action().monoid;
  if (!same) {
    chk.fail("multiplicative", {}, "different acting monoids");
  } else {
    chk.expect(f[a.zero] == b.zero, "multiplicative", {a.zero}, "f(𝟘) ≠ 𝟘");
    for (int side = 0; side < 2; ++side) {
      const Action& x = side == 0 ? a.left_action() : a.right_action();
      const Action& y = side == 0 ? b.left_action() : b.right_action();
      for (int t = 0; t < x.monoid.size(); ++t)
        for (int v = 0; v < n; ++v) chk.expect(f[x(t, v)] == y(t, f[v]), "multiplicative", {side, t, v});
    }
  }
  const bool mult = !chk.report().violated("multiplicative");

  chk.axiom("additive");
  chk.axiom("subadditive");
  chk.axiom("superadditive");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int l = f[a.add(x, y)], r = b.add(f[x], f[y]);
      chk.expect(l == r, "additive", {x, y});
      chk.expect(dst.order(l, r), "subadditive", {x, y});
      chk.expect(dst.order(r, l), "superadditive", {x, y});
    }
  chk.axiom("order_preserving");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (src.order(x, y)) chk.expect(dst.order(f[x], f[y]), "order_preserving", {x, y});
  chk.axiom("paired");
  for (int x = 0; x < n; ++x)
    if (src.pair.zero_set[x]) chk.expect(dst.pair.zero_set[f[x]], "paired", {x});
  chk.axiom("zero_sums");
  if (auto w = zero_sum_witness(f, src.pair, dst.pair)) chk.fail("zero_sums", {w->first, w->second});

  const Report& r = chk.report();
  MorphismFlags& fl = out.flags;
  fl.multiplicative = mult;
  fl.homomorphism = mult && !r.violated("additive");
  fl.order_preserving = !r.violated("order_preserving");
  fl.colax = mult && fl.order_preserving && !r.violated("subadditive");
  fl.lax = mult && fl.order_preserving && !r.violated("superadditive");
  fl.paired = mult && !r.violated("paired");
  fl.weak = fl.paired && !r.violated("zero_sums");
  out.report = chk.take();
  return out;
}

ChainCheck flag_chain(const MorphismTable& m, const OrderedPair& dst) {
  const MorphismFlags& f = m.flags;
  ChainCheck c;
  c.hom_not_colax = f.homomorphism && f.paired && f.order_preserving && !f.colax;
  c.colax_not_weak = f.colax && f.paired && zero_set_upward_closed(dst.pair, dst.order) && !f.weak;
  c.hom_not_weak = f.homomorphism && f.paired && !f.weak;
  return c;
}

std::vector<std::vector<int>> enumerate_multiplicative(const Pair& src, const Pair& dst, double cap, bool additive) {
  const TModule& a = src.module;
  const TModule& b = dst.module;
  require_same_monoids(a, b);
  MapSearch s(a.size(), b.size(), cap);
  add_multiplicative(s, a, b);
  if (additive)
    for (int x = 0; x < a.size(); ++x)
      for (int y = x; y < a.size(); ++y) {
        int z = a.add(x, y);
        s.add(std::max({x, y, z}), [&a, &b, x, y, z](const std::vector<int>& f) { return f[z] == b.add(f[x], f[y]); });
      }
  return s.run();
}

ChainSummary flag_chain_report(const OrderedPair& src, const OrderedPair& dst, double cap) {
  ChainSummary out;
  Checker chk;
  chk.axiom("chain.hom_colax");
  chk.axiom("chain.colax_weak");
  chk.axiom("chain.hom_weak");
  const bool upward = zero_set_upward_closed(dst.pair, dst.order);
  chk.fact("target_upward_closed", upward);
  auto maps = enumerate_multiplicative(src.pair, dst.pair, cap);
  std::size_t unordered_homs = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    auto m = classify(maps[i], src, dst);
    ++out.maps;
    out.homomorphisms += m.flags.homomorphism;
    out.colax += m.flags.colax;
    out.weak += m.flags.weak;
    if (m.flags.homomorphism && m.flags.paired && !m.flags.order_preserving) ++unordered_homs;
    auto c = flag_chain(m, dst);
    const int id = static_cast<int>(i);
    chk.expect(!c.hom_not_colax, "chain.hom_colax", {id});
    chk.expect(!c.colax_not_weak, "chain.colax_weak", {id});
    chk.expect(!c.hom_not_weak, "chain.hom_weak", {id});
    out.exceptions += c.hom_not_colax + c.colax_not_weak + c.hom_not_weak;
  }
  chk.note(std::to_string(unordered_homs) + " paired homomorphisms are not order preserving");
  out.report = chk.take();
  return out;
}

// ---------------------------------------------------------------- Hom and WMor

int MapModule::index_of(const std::vector<int>& f) const {
  auto it = lookup.find(f);
  return it == lookup.end() ? -1 : it->second;
}

MapModule hom_bimagma(const TModule& src, const TModule& dst, double cap) {
  Checker chk;
  auto homs = enumerate_multiplicative(classical_pair(src), classical_pair(dst), cap, true);
  MapModule out = pointwise(std::move(homs), ordered_classical(src), ordered_classical(dst), chk);
  out.report = chk.take();
  return out;
}

MapModule wmor_pair(const OrderedPair& src, const OrderedPair& dst, double cap) {
  Checker chk;
  std::vector<std::vector<int>> weak;
  std::size_t paired_homs = 0;
  chk.axiom("homs_weak");
  for (auto& f : enumerate_multiplicative(src.pair, dst.pair, cap)) {
    auto m = classify(f, src, dst);
    if (m.flags.homomorphism && m.flags.paired) {
      ++paired_homs;
      chk.expect(m.flags.weak, "homs_weak", f);
    }
    if (m.flags.weak) weak.push_back(std::move(f));
  }
  MapModule out = pointwise(std::move(weak), src, dst, chk);
  chk.axiom("sum_weak");
  for (int i = 0; i < out.size(); ++i)
    for (int j = 0; j < out.size(); ++j) {
      const int s = out.pair.module().add(i, j);
      chk.expect(classify(out.maps[s], src, dst).flags.weak, "sum_weak", {i, j});
    }
  chk.note(std::to_string(paired_homs) + " paired homomorphisms");
  out.report = chk.take();
  return out;
}

MapModule colax_pair(const OrderedPair& src, const OrderedPair& dst, double cap, bool paired_only) {
  Checker chk;
  std::vector<std::vector<int>> keep;
  for (auto& f : enumerate_multiplicative(src.pair, dst.pair, cap)) {
    auto m = classify(f, src, dst);
    if (m.flags.colax && (!paired_only || m.flags.paired)) keep.push_back(std::move(f));
  }
  MapModule out = pointwise(std::move(keep), src, dst, chk);
  out.report = chk.take();
  return out;
}

// ---------------------------------------------------------------- generated orders

SurpassingRelation generated_order(const CongruenceClosure& c, const std::function<bool(int, int)>& related) {
  const int k = c.class_count(), g = c.generators();
  SurpassingRelation rel;
  rel.n = k;
  rel.rel.assign(static_cast<std::size_t>(k) * k, 0);
  for (int x = 0; x < k; ++x) rel.set(x, x);
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b)
      if (related(a, b)) rel.set(c.generator_class(a), c.generator_class(b));
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y)
        if (rel(x, y)) pairs.emplace_back(x, y);
    for (auto [x, y] : pairs)
      for (auto [u, v] : pairs) {
        int s = c.add(x, u), t = c.add(y, v);
        if (!rel(s, t)) {
          rel.set(s, t);
          changed = true;
        }
      }
    for (int m = 0; m < k; ++m)
      for (int x = 0; x < k; ++x)
        if (rel(x, m))
          for (int y = 0; y < k; ++y)
            if (rel(m, y) && !rel(x, y)) {
              rel.set(x, y);
              changed = true;
            }
  }
  return rel;
}

// ---------------------------------------------------------------- free-base tensors of maps

OrderedPair codec_pair(const FreeCodec& codec, const OrderedPair& m1, const Pair& m2) {
  const int nv = codec.vector_count();
  const TModule& a = m1.module();
  OrderedPair out;
  TModule& m = out.pair.module;
  for (int x = 0; x < nv; ++x) m.carrier.push_back(codec.label(x));
  m.add = Table(nv, nv);
  for (int x = 0; x < nv; ++x)
    for (int y = 0; y < nv; ++y) m.add(x, y) = codec.add(x, y);
  m.zero = codec.encode(std::vector<int>(codec.rank(), a.zero));
  const Action& l = a.left_action();
  Table act(l.monoid.size(), nv);
  for (int t = 0; t < l.monoid.size(); ++t)
    for (int x = 0; x < nv; ++x) {
      auto v = codec.decode(x);
      for (int& c : v) c = l(t, c);
      act(t, x) = codec.encode(v);
    }
  m.left = Action{l.monoid, act};
  std::vector<bool> zero(nv, false);
  std::vector<int> queue;
  for (int v = 0; v < a.size(); ++v)
    for (int w = 0; w < m2.size(); ++w)
      if (m1.pair.zero_set[v] || m2.zero_set[w]) {
        int x = codec.encode_simple(v, w);
        if (!zero[x]) {
          zero[x] = true;
          queue.push_back(x);
        }
      }
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t r = 0; r <= q; ++r) {
      int s = codec.add(queue[q], queue[r]);
      if (!zero[s]) {
        zero[s] = true;
        queue.push_back(s);
      }
    }
  out.pair.zero_set = zero;
  out.order.n = nv;
  out.order.rel.assign(static_cast<std::size_t>(nv) * nv, 0);
  for (int x = 0; x < nv; ++x) {
    auto u = codec.decode(x);
    for (int y = 0; y < nv; ++y) {
      auto v = codec.decode(y);
      bool le = true;
      for (int j = 0; j < codec.rank() && le; ++j) le = m1.order(u[j], v[j]);
      out.order.set(x, y, le);
    }
  }
  return out;
}

MorphismTable tensor_free_mixed(const std::vector<int>& f1, const std::vector<int>& f2, const FreeCodec& src,
                                const OrderedPair& src1, const Pair& src2, const FreeCodec& dst,
                                const OrderedPair& dst1, const Pair& dst2) {
  auto c2 = classify(f2, ordered_classical(src2.module), ordered_classical(dst2.module));
  if (!c2.flags.homomorphism) throw InputError("right factor is not a homomorphism");
  auto c1 = classify(f1, src1, dst1);
  if (!c1.flags.weak && !c1.flags.colax) throw InputError("left factor is neither weak nor a ⪯-morphism");
  if (src.rank() == 0 || dst.rank() == 0) throw InputError("empty base");
  const int nv = src.vector_count();
  const int zero = dst.encode(std::vector<int>(dst.rank(), dst.m1.zero));
  std::vector<int> map(nv);
  for (int x = 0; x < nv; ++x) {
    auto v = src.decode(x);
    int acc = zero;
    for (int j = 0; j < src.rank(); ++j) acc = dst.add(acc, dst.encode_simple(f1[v[j]], f2[src.base[j]]));
    map[x] = acc;
  }
  OrderedPair ps = codec_pair(src, src1, src2);
  OrderedPair pd = codec_pair(dst, dst1, dst2);
  MorphismTable out = classify(map, ps, pd);
  Checker chk;
  if (c1.flags.weak) {
    chk.axiom("expected_weak");
    chk.expect(out.flags.weak, "expected_weak", {});
  }
  if (c1.flags.colax) {
    chk.axiom("expected_colax");
    chk.expect(out.flags.colax, "expected_colax", {});
  }
  out.report.merge(chk.take());
  return out;
}

PartialTensorMorphism tensor_partial(const std::vector<int>& f1, const std::vector<int>& f2, const FreeCodec& src,
                                     const OrderedPair& src1, const FreeCodec& dst, const OrderedPair& dst1,
                                     const OrderedPair& dst_pair) {
  const bool colax = classify(f1, src1, dst1).flags.colax;
  const int nv = src.vector_count();
  const int zero = dst.encode(std::vector<int>(dst.rank(), dst.m1.zero));
  PartialTensorMorphism out;
  out.value.resize(nv);
  for (int x = 0; x < nv; ++x) {
    auto s = support(src, x);
    if (s.empty()) {
      out.value[x] = zero;
    } else if (s.size() == 1) {
      int j = s[0];
      out.value[x] = dst.encode_simple(f1[src.decode(x)[j]], f2[src.base[j]]);
    }
  }
  Checker chk;
  if (colax) chk.axiom("defined_sum");
  std::size_t cases = 0, below = 0;
  for (int j = 0; j < src.rank(); ++j)
    for (int v = 0; v < src.m1.size(); ++v)
      for (int vp = 0; vp < src.m1.size(); ++vp) {
        int x = unit_vector(src, j, v), y = unit_vector(src, j, vp), s = src.add(x, y);
        if (!out.value[s]) continue;
        ++cases;
        int rhs = dst_pair.module().add(*out.value[x], *out.value[y]);
        bool le = dst_pair.order(*out.value[s], rhs);
        below += le;
        if (colax) chk.expect(le, "defined_sum", {j, v, vp});
      }
  chk.fact("defined_sum_below", below == cases);
  chk.note(std::to_string(below) + " of " + std::to_string(cases) + " defined-sum cases below the sum of images");
  out.report = chk.take();
  return out;
}

// ---------------------------------------------------------------- meet and set tensors

namespace {

std::vector<std::set<Subset>> reachable_values(const Tensor& t, const std::vector<Subset>& gv, const Hypermagma& h,
                                               bool reversed) {
  const int k = t.class_count(), g = static_cast<int>(gv.size());
  std::vector<std::set<Subset>> vals(k);
  std::vector<std::pair<int, Subset>> seeds, queue;
  for (int i = 0; i < g; ++i) {
    int gi = reversed ? g - 1 - i : i;
    int c = t.closure.generator_class(gi);
    if (vals[c].insert(gv[gi]).second) seeds.emplace_back(c, gv[gi]);
  }
  queue = seeds;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& [c, s] : seeds) {
      int cc = t.closure.add(queue[q].first, c);
      Subset ss = powerset_add(h, queue[q].second, s);
      if (vals[cc].insert(ss).second) queue.emplace_back(cc, ss);
    }
  return vals;
}

}  // namespace

MeetTensor meet_tensor(const Tensor& t, const std::function<int(int, int)>& value, const Hyperpair& target) {
  if (!t.saturated())
    throw Undetermined("meet tensor: closure not saturated at L = " + std::to_string(t.closure.bound()),
                       static_cast<std::size_t>(t.closure.bound()));
  std::set<Subset> family(target.family.begin(), target.family.end());
  family.insert(0);
  for (Subset a : family)
    for (Subset b : family)
      if (!family.count(a & b)) throw InputError("meet target is not closed under intersection");
  const Hypermagma& h = target.base;
  const int g = t.closure.generators();
  std::vector<Subset> gv(g);
  for (int i = 0; i < g; ++i) {
    int idx = value(t.first(i), t.second(i));
    if (idx < 0 || idx >= target.size()) throw InputError("meet tensor value outside the target family");
    gv[i] = target.family[idx];
  }
  auto vals = reachable_values(t, gv, h, false);
  auto again = reachable_values(t, gv, h, true);
  const int k = t.class_count();
  MeetTensor out;
  Checker chk;
  out.meet.assign(k, 0);
  out.values.resize(k);
  for (int c = 0; c < k; ++c) {
    out.values[c].assign(vals[c].begin(), vals[c].end());
    Subset m = ~Subset{0};
    for (Subset s : vals[c]) m &= s;
    out.meet[c] = vals[c].empty() ? 0 : m;
  }
  chk.axiom("representative_invariance");
  for (int c = 0; c < k; ++c) chk.expect(vals[c] == again[c], "representative_invariance", {c});
  chk.axiom("meet_in_family");
  for (int c = 0; c < k; ++c) chk.expect(family.count(out.meet[c]) > 0, "meet_in_family", {c});
  chk.axiom("bounded_contains_exact");
  out.bounded_meet.assign(k, 0);
  for (int c = 0; c < k; ++c) {
    Subset m = ~Subset{0};
    for (int term : t.closure.members[c]) {
      auto gens = t.closure.space.term(term);
      Subset s = gv[gens[0]];
      for (std::size_t i = 1; i < gens.size(); ++i) s = powerset_add(h, s, gv[gens[i]]);
      m &= s;
    }
    out.bounded_meet[c] = m;
    chk.expect(is_subset(out.meet[c], m), "bounded_contains_exact", {c});
  }
  chk.axiom("subadditive");
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      Subset lhs = out.meet[t.closure.add(x, y)];
      Subset rhs = powerset_add(h, out.meet[x], out.meet[y]);
      chk.expect(is_subset(lhs, rhs), "subadditive", {x, y});
    }
  out.report = chk.take();
  return out;
}

Report set_tensor_law(const Tensor& t, const MeetTensor& m, const Hyperpair& target) {
  Checker chk;
  const int k = t.class_count();
  chk.axiom("meet_is_intersection");
  for (int c = 0; c < k; ++c) {
    Subset s = ~Subset{0};
    for (Subset v : m.values[c]) s &= v;
    chk.expect((m.values[c].empty() ? 0 : s) == m.meet[c], "meet_is_intersection", {c});
  }
  chk.axiom("superset_law");
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      const auto& target_vals = m.values[t.closure.add(x, y)];
      for (Subset a : m.values[x])
        for (Subset b : m.values[y]) {
          Subset s = powerset_add(target.base, a, b);
          chk.expect(std::binary_search(target_vals.begin(), target_vals.end(), s), "superset_law", {x, y});
        }
    }
  return chk.take();
}

// ---------------------------------------------------------------- tensor extensions

ExtendedMorphism tensor_extend_weak(const std::vector<int>& f, const OrderedPair& src, const OrderedPair& dst,
                                    const FiniteMonoid& tprime, const std::vector<int>& embedding, ExtensionMode mode,
                                    const std::vector<int>& base, const TensorOptions& options) {
  auto cf = classify(f, src, dst);
  if (!cf.flags.weak && !cf.flags.colax) throw InputError("map is neither weak nor a ⪯-morphism");
  const bool admissible = mode == ExtensionMode::free_base;
  ExtendedMorphism out;
  out.source = tensor_extension(tprime, embedding, src.module(), admissible, options);
  out.target = tensor_extension(tprime, embedding, dst.module(), admissible, options);
  const Extension& e1 = out.source;
  const Extension& e2 = out.target;
  const TModule& m1 = src.module();
  const Action& l1 = m1.left_action();
  const FiniteMonoid& t = l1.monoid;
  const int n1 = m1.size();
  Checker chk;

  if (mode == ExtensionMode::cosets) {
    // T′⊗M ≅ ⊕ᵢ cᵢ⊗M: a class is read off as its coset coordinates yᵢ, then f̃ = Σ cᵢ⊗f(yᵢ).
    std::vector<int> rep(tprime.size(), -1);
    std::vector<int> reps;
    std::vector<std::vector<int>> split(tprime.size());  // a with a′ = cᵢ·a
    for (int c = 0; c < tprime.size(); ++c) {
      if (rep[c] >= 0) continue;
      std::set<int> coset;
      for (int a = 0; a < t.size(); ++a) coset.insert(tprime(c, embedding[a]));
      for (int x : coset)
        if (rep[x] >= 0) throw InputError("T′ is not a disjoint union of cosets cT");
      for (int x : coset) rep[x] = static_cast<int>(reps.size());
      reps.push_back(c);
      for (int a = 0; a < t.size(); ++a) split[tprime(c, embedding[a])].push_back(a);
    }
    chk.axiom("decomposition_independent");
    std::vector<int> coord(static_cast<std::size_t>(tprime.size()) * n1);
    for (int ap = 0; ap < tprime.size(); ++ap)
      for (int y = 0; y < n1; ++y) {
        int v = l1(split[ap].front(), y);
        for (int a : split[ap]) chk.expect(l1(a, y) == v, "decomposition_independent", {ap, y, a});
        coord[e1.generator(ap, y)] = v;
      }
    auto coordinates = [&](int term) {
      std::vector<int> yv(reps.size(), -1);
      for (int g : e1.closure.space.term(term)) {
        int i = rep[g / n1];
        yv[i] = yv[i] < 0 ? coord[g] : m1.add(yv[i], coord[g]);
      }
      return yv;
    };
    if (!e1.closure.saturated || !e2.closure.saturated)
      throw Undetermined("tensor extension not saturated at L = " + std::to_string(options.bound),
                         static_cast<std::size_t>(options.bound));
    chk.axiom("coordinates_well_defined");
    out.map.resize(e1.closure.class_count());
    for (int c = 0; c < e1.closure.class_count(); ++c) {
      auto yv = coordinates(e1.closure.representative(c));
      for (int term : e1.closure.members[c])
        chk.expect(coordinates(term) == yv, "coordinates_well_defined", {c, term});
      int acc = -1;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (yv[i] < 0) continue;
        int term = e2.closure.generator_class(e2.generator(reps[i], f[yv[i]]));
        acc = acc < 0 ? term : e2.closure.add(acc, term);
      }
      out.map[c] = acc < 0 ? e2.closure.generator_class(e2.generator(tprime.identity, dst.module().zero)) : acc;
    }
    chk.note(std::to_string(reps.size()) + " cosets");
  } else {
    std::vector<int> gv(static_cast<std::size_t>(tprime.size()) * n1, -1);
    std::vector<std::vector<int>> coords;
    if (base.empty() || !is_free_base(m1, base, &coords)) throw InputError("source is not free on the given base");
    for (int ap = 0; ap < tprime.size(); ++ap)
      for (int y = 0; y < n1; ++y) {
        int acc = e2.closure.generator_class(e2.generator(ap, dst.module().zero));
        bool first = true;
        for (std::size_t i = 0; i < base.size(); ++i) {
          int a = coords[y][i];
          if (a < 0) continue;
          int term = e2.closure.generator_class(e2.generator(tprime(ap, embedding[a]), f[base[i]]));
          acc = first ? term : e2.closure.add(acc, term);
          first = false;
        }
        gv[e1.generator(ap, y)] = acc;
      }
    auto im = induce(e1.closure, gv, [&](int x, int y) { return e2.closure.add(x, y); });
    chk.report().merge(im.report, "well_defined");
    if (!im.ok()) {
      out.report = chk.take();
      return out;
    }
    out.map = im.map;
  }
  out.src_pair = extension_pair(e1, src);
  out.dst_pair = extension_pair(e2, dst);
  out.table = classify(out.map, out.src_pair, out.dst_pair);
  if (cf.flags.weak) {
    chk.axiom("expected_weak");
    chk.expect(out.table.flags.weak, "expected_weak", {});
  }
  if (cf.flags.colax) {
    chk.axiom("expected_colax");
    chk.expect(out.table.flags.colax, "expected_colax", {});
  }
  out.report = chk.take();
  return out;
}

// ---------------------------------------------------------------- adjoint correspondences

AdjointResult adjoint_wmor(const OrderedPair& m1, const OrderedPair& m2, const OrderedPair& m3, AdjointMode mode,
                           double cap) {
  require_same_monoids(m1.module(), m3.module());
  require_same_monoids(m2.module(), m3.module());
  const bool weak = mode == AdjointMode::weak;
  MapModule inner = weak ? wmor_pair(m1, m3, cap) : colax_pair(m1, m3, cap);
  MapModule outer = weak ? wmor_pair(m2, inner.pair, cap) : colax_pair(m2, inner.pair, cap);
  AdjointResult out;
  Checker chk;
  chk.report().merge(inner.report, "inner");
  chk.report().merge(outer.report, "outer");

  const TModule& a = m1.module();
  const TModule& b = m2.module();
  const TModule& c = m3.module();
  const int n1 = a.size(), n2 = b.size();
  MapSearch s(n1 * n2, c.size(), cap);
  for (int v = 0; v < n1; ++v) s.restrict(v * n2 + b.zero, {c.zero});
  for (int w = 0; w < n2; ++w) s.restrict(a.zero * n2 + w, {c.zero});
  for (int side = 0; side < 2; ++side) {
    const Action& x1 = side == 0 ? a.left_action() : a.right_action();
    const Action& x2 = side == 0 ? b.left_action() : b.right_action();
    const Action& x3 = side == 0 ? c.left_action() : c.right_action();
    for (int t = 0; t < x1.monoid.size(); ++t)
      for (int v = 0; v < n1; ++v)
        for (int w = 0; w < n2; ++w) {
          int i = v * n2 + w, j1 = x1(t, v) * n2 + w, j2 = v * n2 + x2(t, w);
          s.add(std::max(i, j1), [&x3, t, i, j1](const std::vector<int>& f) { return f[j1] == x3(t, f[i]); });
          s.add(std::max(i, j2), [&x3, t, i, j2](const std::vector<int>& f) { return f[j2] == x3(t, f[i]); });
        }
  }
  auto accept = [&](const MorphismFlags& fl) { return weak ? fl.weak : (fl.colax && fl.paired); };
  for (int w = 0; w < n2; ++w)
    s.add((n1 - 1) * n2 + w, [&, w](const std::vector<int>& f) {
      std::vector<int> col(n1);
      for (int v = 0; v < n1; ++v) col[v] = f[v * n2 + w];
      return accept(classify(col, m1, m3).flags);
    });
  for (int v = 0; v < n1; ++v)
    s.add(v * n2 + n2 - 1, [&, v](const std::vector<int>& f) {
      std::vector<int> row(f.begin() + v * n2, f.begin() + (v + 1) * n2);
      return accept(classify(row, m2, m3).flags);
    });
  auto lhs = s.run();
  std::map<std::vector<int>, int> lhs_index;
  for (std::size_t i = 0; i < lhs.size(); ++i) lhs_index.emplace(lhs[i], static_cast<int>(i));

  out.lhs = lhs.size();
  out.rhs = outer.maps.size();
  out.inner = inner.maps.size();
  chk.axiom("cardinality");
  chk.expect(out.lhs == out.rhs, "cardinality", {static_cast<int>(out.lhs), static_cast<int>(out.rhs)});

  std::vector<int> phi(lhs.size(), -1);
  chk.axiom("phi_lands");
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    auto cols = transpose_rows(lhs[i], n1, n2);
    std::vector<int> g(n2);
    bool ok = true;
    for (int w = 0; w < n2 && ok; ++w) {
      g[w] = inner.index_of(cols[w]);
      ok = g[w] >= 0;
    }
    if (ok) phi[i] = outer.index_of(g);
    chk.expect(phi[i] >= 0, "phi_lands", {static_cast<int>(i)});
  }
  std::vector<int> psi(outer.maps.size(), -1);
  chk.axiom("psi_lands");
  for (int j = 0; j < outer.size(); ++j) {
    std::vector<int> f(static_cast<std::size_t>(n1) * n2);
    for (int v = 0; v < n1; ++v)
      for (int w = 0; w < n2; ++w) f[v * n2 + w] = inner.maps[outer.maps[j][w]][v];
    auto it = lhs_index.find(f);
    if (it != lhs_index.end()) psi[j] = it->second;
    chk.expect(psi[j] >= 0, "psi_lands", {j});
  }
  chk.axiom("psi_phi_identity");
  for (std::size_t i = 0; i < lhs.size(); ++i)
    chk.expect(phi[i] >= 0 && psi[phi[i]] == static_cast<int>(i), "psi_phi_identity", {static_cast<int>(i)});
  chk.axiom("phi_psi_identity");
  for (int j = 0; j < outer.size(); ++j) chk.expect(psi[j] >= 0 && phi[psi[j]] == j, "phi_psi_identity", {j});
  out.report = chk.take();
  return out;
}

SectionResult adjoint_section(const OrderedPair& m1, const OrderedPair& m2, const std::vector<int>& base,
                              const OrderedPair& m3, double cap) {
  FreeCodec codec = free_normal_form(m1.module(), m2.module(), base);
  MapModule inner = colax_pair(m1, m3, cap);
  SectionResult out;
  Checker chk;
  chk.report().merge(inner.report, "inner");
  const TModule& b = m2.module();
  const TModule& c = m3.module();
  const Action& l2 = b.left_action();
  std::vector<bool> multiple(b.size(), false);
  for (int t = 0; t < l2.monoid.size(); ++t)
    for (int e : base) multiple[l2(t, e)] = true;

  require_same_monoids(b, inner.pair.module());
  MapSearch s(b.size(), inner.size(), cap);
  add_multiplicative(s, b, inner.pair.module());
  const int zero_map = inner.pair.module().zero;
  for (int w = 0; w < b.size(); ++w)
    if (!multiple[w]) s.restrict(w, {zero_map});
  auto gs = s.run();
  out.maps = gs.size();

  OrderedPair tp = codec_pair(codec, m1, m2.pair);
  const int nv = codec.vector_count();
  std::set<std::vector<int>> distinct;
  chk.axiom("phi_psi_identity");
  chk.axiom("defined_sum");
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    const auto& g = gs[gi];
    std::vector<int> psi(nv, c.zero);
    for (int x = 0; x < nv; ++x) {
      auto sup = support(codec, x);
      if (sup.size() == 1) psi[x] = inner.maps[g[base[sup[0]]]][codec.decode(x)[sup[0]]];
    }
    distinct.insert(psi);
    bool ident = true;
    for (int w = 0; w < b.size(); ++w)
      for (int v = 0; v < m1.size(); ++v) ident = ident && psi[codec.encode_simple(v, w)] == inner.maps[g[w]][v];
    out.identity += ident;
    chk.expect(ident, "phi_psi_identity", {static_cast<int>(gi)});
    for (int j = 0; j < codec.rank(); ++j)
      for (int v = 0; v < m1.size(); ++v)
        for (int vp = 0; vp < m1.size(); ++vp) {
          int x = unit_vector(codec, j, v), y = unit_vector(codec, j, vp);
          chk.expect(m3.order(psi[codec.add(x, y)], c.add(psi[x], psi[y])), "defined_sum",
                     {static_cast<int>(gi), j, v, vp});
        }
    out.psi_colax += classify(psi, tp, m3).flags.colax;
  }
  chk.axiom("psi_injective");
  chk.expect(distinct.size() == gs.size(), "psi_injective", {});
  chk.fact("psi_colax_all", out.psi_colax == out.maps);
  chk.note(std::to_string(out.psi_colax) + " of " + std::to_string(out.maps) + " ψ_g pass the full ⪯-morphism law");
  out.report = chk.take();
  return out;
}

CanonicalResult adjoint_canonical(const OrderedPair& m1, const OrderedPair& m2, const OrderedPair& m3,
                                  const TensorOptions& options, double cap) {
  if (!m3.hyper) throw InputError("Ψ needs a target given by an intersection-closed subset family");
  const Hyperpair& h3 = *m3.hyper;
  Tensor t = build_tensor(m1.module(), m2.module(), options);
  CanonicalResult out;
  Checker chk;
  Report tp_report;
  OrderedPair tp;
  tp.pair = tensor_pair(m1.pair, m2.pair, t, &tp_report);
  const int n2 = m2.size();
  tp.order = generated_order(t.closure, [&](int g, int h) {
    return m1.order(g / n2, h / n2) && m2.order(g % n2, h % n2);
  });
  MapModule inner = colax_pair(m1, m3, cap, false);
  chk.report().merge(inner.report, "inner");

  chk.axiom("phi.inner_colax");
  chk.axiom("phi.outer_colax");
  for (auto& f : enumerate_multiplicative(tp.pair, m3.pair, cap)) {
    if (!classify(f, tp, m3).flags.colax) continue;
    ++out.phi_inputs;
    std::vector<int> g(n2, -1);
    bool ok = true;
    for (int w = 0; w < n2; ++w) {
      std::vector<int> fw(m1.size());
      for (int v = 0; v < m1.size(); ++v) fw[v] = f[t.simple(v, w)];
      g[w] = inner.index_of(fw);
      ok = ok && chk.expect(g[w] >= 0, "phi.inner_colax", {static_cast<int>(out.phi_inputs - 1), w});
    }
    if (ok) chk.expect(classify(g, m2, inner.pair).flags.colax, "phi.outer_colax", {static_cast<int>(out.phi_inputs - 1)});
  }

  chk.axiom("psi.total");
  chk.axiom("psi.subadditive");
  for (auto& g : enumerate_multiplicative(m2.pair, inner.pair.pair, cap)) {
    if (!classify(g, m2, inner.pair).flags.colax) continue;
    const int id = static_cast<int>(out.psi_inputs++);
    auto mt = meet_tensor(t, [&](int v, int w) { return inner.maps[g[w]][v]; }, h3);
    chk.report().merge(mt.report, "meet");
    std::vector<int> psi(t.class_count());
    bool total = true;
    for (int c = 0; c < t.class_count(); ++c) {
      psi[c] = h3.index(mt.meet[c]);
      total = total && psi[c] >= 0;
    }
    if (!chk.expect(total, "psi.total", {id})) continue;
    auto c = classify(psi, tp, m3);
    out.psi_colax += c.flags.colax;
    chk.expect(!c.report.violated("subadditive"), "psi.subadditive", {id});
  }
  chk.fact("psi_colax_all", out.psi_colax == out.psi_inputs);
  chk.note(std::to_string(out.psi_colax) + " of " + std::to_string(out.psi_inputs) + " Ψ(g) pass the full ⪯-morphism law");
  out.report = chk.take();
  return out;
}

// ---------------------------------------------------------------- pullbacks

Pullback paired_pullback(const std::vector<int>& f, const TModule& src, const OrderedPair& dst, bool order) {
  if (static_cast<int>(f.size()) != src.size()) throw InputError("map is not total on the source carrier");
  Pullback out;
  Checker chk;
  const int n = src.size();
  out.pair.pair.module = src;
  out.pair.pair.zero_set.assign(n, false);
  for (int b = 0; b < n; ++b) out.pair.pair.zero_set[b] = dst.pair.zero_set[f[b]];
  out.pair.order = SurpassingRelation::equality(n);
  if (order) {
    std::set<int> image(f.begin(), f.end());
    if (static_cast<int>(image.size()) != n) throw InputError("pulled-back order needs an injective map");
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) out.pair.order.set(x, y, dst.order(f[x], f[y]));
    Report rs = check_surpassing(out.pair.pair, out.pair.order);
    chk.report().merge(rs, "surpassing");
  }
  chk.report().merge(check_pair(out.pair.pair), "pair");
  out.table = classify(f, out.pair, dst);
  chk.axiom("multiplicative");
  chk.expect(out.table.flags.multiplicative, "multiplicative", {});
  chk.axiom("paired");
  chk.expect(out.table.flags.paired, "paired", {});
  if (order && out.table.flags.homomorphism) {
    chk.axiom("colax");
    chk.expect(out.table.flags.colax, "colax", {});
  }
  out.report = chk.take();
  return out;
}

Pullback image_pair(const std::vector<int>& f, const Pair& src, const TModule& dst) {
  if (static_cast<int>(f.size()) != src.size()) throw InputError("map is not total on the source carrier");
  Pullback out;
  Checker chk;
  out.pair.pair.module = dst;
  out.pair.pair.zero_set.assign(dst.size(), false);
  for (int b = 0; b < src.size(); ++b)
    if (src.zero_set[b]) out.pair.pair.zero_set[f[b]] = true;
  out.pair.order = SurpassingRelation::equality(dst.size());
  chk.report().merge(check_pair(out.pair.pair), "pair");
  out.table = classify(f, ordered(src, SurpassingRelation::equality(src.size())), out.pair);
  chk.axiom("homomorphism");
  chk.expect(out.table.flags.homomorphism, "homomorphism", {});
  chk.axiom("paired");
  chk.expect(out.table.flags.paired, "paired", {});
  out.report = chk.take();
  return out;
}

}  // namespace hyperalg
