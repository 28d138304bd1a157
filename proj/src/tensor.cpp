#include "hyperalg/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "hyperalg/fixtures.hpp"

namespace hyperalg {

// ---------------------------------------------------------------- term space

namespace {

double multisets(int g, int k) {
  // C(g + k - 1, k)
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (g + i - 1) / i;
  return std::round(r);
}

}  // namespace

double TermSpace::count(int generators, int bound) {
  double total = 0;
  for (int k = 1; k <= bound; ++k) total += multisets(generators, k);
  return total;
}

int TermSpace::largest_feasible(int generators, std::size_t budget) {
  int l = 0;
  while (count(generators, l + 1) <= static_cast<double>(budget) && l < 64) ++l;
  return l;
}

TermSpace::TermSpace(int generators, int bound) : generators_(generators), bound_(bound) {
  if (generators < 1) throw InputError("term space needs at least one generator");
  if (bound < 1) throw InputError("term bound must be positive");
  // ways_[m][c]: non-decreasing sequences of length m over [c, g)
  ways_.assign(bound + 1, std::vector<double>(generators + 1, 0));
  for (int c = 0; c <= generators; ++c) ways_[0][c] = 1;
  for (int m = 1; m <= bound; ++m)
    for (int c = generators - 1; c >= 0; --c) ways_[m][c] = ways_[m][c + 1] + ways_[m - 1][c];
  const auto total = static_cast<std::size_t>(count(generators, bound));
  data_.reserve(total * bound);
  lengths_.reserve(total);
  offsets_.assign(bound + 2, 0);
  std::vector<int> cur;
  for (int k = 1; k <= bound; ++k) {
    offsets_[k] = lengths_.size();
    cur.assign(k, 0);
    while (true) {
      for (int i = 0; i < bound; ++i) data_.push_back(i < k ? cur[i] : -1);
      lengths_.push_back(k);
      int i = k - 1;
      while (i >= 0 && cur[i] == generators - 1) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < k; ++j) cur[j] = cur[i];
    }
  }
  offsets_[bound + 1] = lengths_.size();
}

std::span<const int> TermSpace::term(int id) const {
  return {data_.data() + static_cast<std::size_t>(id) * bound_, static_cast<std::size_t>(lengths_[id])};
}

double TermSpace::rank_within(std::span<const int> s) const {
  const int k = static_cast<int>(s.size());
  double r = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int c = prev; c < s[i]; ++c) r += ways_[k - 1 - i][c];
    prev = s[i];
  }
  return r;
}

int TermSpace::find(std::span<const int> sorted) const {
  const int k = static_cast<int>(sorted.size());
  if (k < 1 || k > bound_) return -1;
  return static_cast<int>(offsets_[k] + static_cast<std::size_t>(rank_within(sorted)));
}

int TermSpace::extend(int id, int g) const {
  const int k = lengths_[id];
  if (k >= bound_) return -1;
  int buf[64];
  auto t = term(id);
  int j = 0;
  bool placed = false;
  for (int i = 0; i < k; ++i) {
    if (!placed && g < t[i]) {
      buf[j++] = g;
      placed = true;
    }
    buf[j++] = t[i];
  }
  if (!placed) buf[j++] = g;
  return find({buf, static_cast<std::size_t>(j)});
}

// ---------------------------------------------------------------- closure

std::optional<int> CongruenceClosure::classify(std::vector<int> gens) const {
  if (gens.empty()) return std::nullopt;
  std::sort(gens.begin(), gens.end());
  if (static_cast<int>(gens.size()) <= bound()) return class_of_term[space.find(gens)];
  if (!saturated) return std::nullopt;
  int c = class_of_term[gens[0]];
  for (std::size_t i = 1; i < gens.size(); ++i) {
    c = act(c, gens[i]);
    if (c < 0) return std::nullopt;
  }
  return c;
}

CongruenceClosure close_congruence(int generators, std::vector<Rule> rules, int bound, std::size_t budget) {
  for (auto& r : rules) {
    std::sort(r.lhs.begin(), r.lhs.end());
    std::sort(r.rhs.begin(), r.rhs.end());
    if (r.rhs < r.lhs) std::swap(r.lhs, r.rhs);
    for (const auto* side : {&r.lhs, &r.rhs}) {
      if (side->empty()) throw InputError("rule side is empty");
      if (static_cast<int>(side->size()) > bound)
        throw InputError("bound " + std::to_string(bound) + " is below a rule length");
      for (int g : *side)
        if (g < 0 || g >= generators) throw InputError("rule generator out of range");
    }
  }
  std::erase_if(rules, [](const Rule& r) { return r.lhs == r.rhs; });
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());

  const double need = TermSpace::count(generators, bound);
  if (need > static_cast<double>(budget)) {
    int l = TermSpace::largest_feasible(generators, budget);
    throw ResourceError("term space for L = " + std::to_string(bound) + " needs " +
                            std::to_string(static_cast<long long>(need)) + " terms; largest feasible L is " +
                            std::to_string(l),
                        static_cast<std::size_t>(l));
  }

  CongruenceClosure c;
  c.space = TermSpace(generators, bound);
  c.rules = std::move(rules);
  const TermSpace& sp = c.space;
  const int n = sp.size();

  std::vector<int> parent(n), size(n, 1), short_rep(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < n; ++i) short_rep[i] = sp.length(i) < bound ? i : -1;
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::pair<int, int>> pending;
  for (const auto& r : c.rules) pending.emplace_back(sp.find(r.lhs), sp.find(r.rhs));
  while (!pending.empty()) {
    auto [x, y] = pending.back();
    pending.pop_back();
    int rx = find(x), ry = find(y);
    if (rx == ry) continue;
    if (size[rx] < size[ry]) std::swap(rx, ry);
    parent[ry] = rx;
    size[rx] += size[ry];
    int sx = short_rep[rx], sy = short_rep[ry];
    if (sx >= 0 && sy >= 0) {
      for (int g = 0; g < generators; ++g) pending.emplace_back(sp.extend(sx, g), sp.extend(sy, g));
    } else if (sx < 0) {
      short_rep[rx] = sy;
    }
  }

  c.class_of_term.assign(n, -1);
  std::vector<int> root_class(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (root_class[r] < 0) {
      root_class[r] = static_cast<int>(c.members.size());
      c.members.emplace_back();
    }
    c.class_of_term[i] = root_class[r];
    c.members[root_class[r]].push_back(i);
  }

  const int k = c.class_count();
  c.act = Table(k, generators, -1);
  bool all_short = true;
  for (int cl = 0; cl < k; ++cl) {
    int rep = c.representative(cl);
    if (sp.length(rep) >= bound) {
      all_short = false;
      continue;
    }
    for (int g = 0; g < generators; ++g) c.act(cl, g) = c.class_of_term[sp.extend(rep, g)];
  }
  auto apply = [&](int cl, const std::vector<int>& gens) {
    for (int g : gens) {
      if (cl < 0) return -1;
      cl = c.act(cl, g);
    }
    return cl;
  };
  std::string detail;
  if (!all_short) {
    detail = "a class has no member shorter than L";
  } else {
    for (int cl = 0; cl < k && detail.empty(); ++cl)
      for (int g = 0; g < generators && detail.empty(); ++g)
        for (int h = g + 1; h < generators; ++h)
          if (c.act(c.act(cl, g), h) != c.act(c.act(cl, h), g)) {
            detail = "generator actions do not commute on class " + std::to_string(cl);
            break;
          }
    for (const auto& r : c.rules) {
      if (!detail.empty()) break;
      for (int cl = 0; cl < k; ++cl)
        if (apply(cl, r.lhs) != apply(cl, r.rhs)) {
          detail = "a rule fails in the context of class " + std::to_string(cl);
          break;
        }
    }
  }
  c.saturated = detail.empty();
  c.saturation_detail = detail;

  c.class_add = Table(k, k, -1);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      auto t = sp.term(c.representative(b));
      int cl = a;
      for (int g : t) {
        if (cl < 0) break;
        cl = c.act(cl, g);
      }
      c.class_add(a, b) = cl;
    }
  return c;
}

InducedMap induce(const CongruenceClosure& c, const std::vector<int>& generator_value,
                  const std::function<int(int, int)>& add) {
  Checker chk;
  auto eval = [&](std::span<const int> t) {
    int v = generator_value[t[0]];
    for (std::size_t i = 1; i < t.size(); ++i) v = add(v, generator_value[t[i]]);
    return v;
  };
  chk.axiom("rule_preserved");
  for (std::size_t i = 0; i < c.rules.size(); ++i) {
    const Rule& r = c.rules[i];
    chk.expect(eval(r.lhs) == eval(r.rhs), "rule_preserved", {static_cast<int>(i)});
  }
  InducedMap out;
  const int k = c.class_count();
  out.map.assign(k, -1);
  chk.axiom("class_consistent");
  for (int cl = 0; cl < k; ++cl) {
    int v = eval(c.space.term(c.representative(cl)));
    out.map[cl] = v;
    for (int t : c.members[cl])
      if (eval(c.space.term(t)) != v) {
        chk.fail("class_consistent", {cl, t});
        break;
      }
  }
  if (c.saturated) {
    chk.axiom("additive");
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        chk.expect(out.map[c.add(a, b)] == add(out.map[a], out.map[b]), "additive", {a, b});
  }
  out.report = chk.take();
  return out;
}

// ---------------------------------------------------------------- tensor

namespace {

std::vector<int> additive_negation(const TModule& m, std::string_view which) {
  std::vector<int> neg(m.size(), -1);
  for (int b = 0; b < m.size(); ++b) {
    for (int x = 0; x < m.size(); ++x)
      if (m.add(b, x) == m.zero) {
        neg[b] = x;
        break;
      }
    if (neg[b] < 0)
      throw InputError("negation rule needs additive inverses; " + std::string(which) + " element " + m.carrier[b] +
                       " has none");
  }
  return neg;
}

void require_saturated(const CongruenceClosure& c, std::string_view what) {
  if (!c.saturated)
    throw Undetermined(std::string(what) + ": closure not saturated at L = " + std::to_string(c.bound()) + " (" +
                           c.saturation_detail + ")",
                       static_cast<std::size_t>(c.bound()));
}

// Class map of b -> f(b) for a carrier map f on the first or second factor.
std::optional<Table> induced_action(const Tensor& t, const Action& act, bool on_first, Report* report,
                                    const std::string& tag) {
  const int k = act.monoid.size();
  Table out(k, t.class_count());
  for (int a = 0; a < k; ++a) {
    auto m = t.from_simple(
        [&](int i, int j) { return on_first ? t.simple(act(a, i), j) : t.simple(i, act(a, j)); },
        [&](int x, int y) { return t.closure.add(x, y); });
    if (!m.ok()) {
      if (report) report->merge(m.report, tag);
      return std::nullopt;
    }
    for (int c = 0; c < t.class_count(); ++c) out(a, c) = m.map[c];
  }
  return out;
}

}  // namespace

std::string Tensor::term_label(int term) const {
  std::string s;
  for (int g : closure.space.term(term)) {
    if (!s.empty()) s += " + ";
    s += m1.carrier[first(g)] + "⊗" + m2.carrier[second(g)];
  }
  return s;
}

std::vector<std::string> Tensor::class_labels() const {
  std::vector<std::string> out;
  for (int c = 0; c < class_count(); ++c) out.push_back(term_label(closure.representative(c)));
  return out;
}

InducedMap Tensor::from_simple(const std::function<int(int, int)>& value,
                               const std::function<int(int, int)>& add) const {
  std::vector<int> gv(static_cast<std::size_t>(m1.size()) * m2.size());
  for (int g = 0; g < static_cast<int>(gv.size()); ++g) gv[g] = value(first(g), second(g));
  return induce(closure, gv, add);
}

TModule Tensor::to_module(Report* report) const {
  require_saturated(closure, "tensor module");
  TModule m;
  m.carrier = class_labels();
  m.add = closure.class_add;
  m.zero = zero_class();
  if (m1.left) {
    if (auto tab = induced_action(*this, *m1.left, true, report, "left_action")) m.left = Action{m1.left->monoid, *tab};
  }
  if (auto tab = induced_action(*this, m2.right_action(), false, report, "right_action"))
    m.right = Action{m2.right_action().monoid, *tab};
  if (!m.left && m.right) m.left = m.right;
  if (m1.unit && m2.unit) m.unit = simple(*m1.unit, *m2.unit);
  return m;
}

Tensor build_tensor(const TModule& m1, const TModule& m2, const FiniteMonoid& over, const TensorOptions& options) {
  validate(m1);
  validate(m2);
  const Action& r1 = m1.right_action();
  const Action& l2 = m2.left_action();
  if (!(r1.monoid == over)) throw InputError("first factor is not a right module over the given monoid");
  if (!(l2.monoid == over)) throw InputError("second factor is not a left module over the given monoid");
  Tensor t;
  t.m1 = m1;
  t.m2 = m2;
  t.over = over;
  t.negation = options.negation;
  const int n1 = m1.size(), n2 = m2.size();
  std::vector<Rule> rules;
  for (int v = 0; v < n1; ++v)
    for (int w = v; w < n1; ++w)
      for (int x = 0; x < n2; ++x)
        rules.push_back({{t.generator(m1.add(v, w), x)}, {t.generator(v, x), t.generator(w, x)}});
  for (int x = 0; x < n1; ++x)
    for (int v = 0; v < n2; ++v)
      for (int w = v; w < n2; ++w)
        rules.push_back({{t.generator(x, m2.add(v, w))}, {t.generator(x, v), t.generator(x, w)}});
  for (int x1 = 0; x1 < n1; ++x1)
    for (int a = 0; a < over.size(); ++a)
      for (int x2 = 0; x2 < n2; ++x2) rules.push_back({{t.generator(r1(a, x1), x2)}, {t.generator(x1, l2(a, x2))}});
  if (options.negation) {
    auto neg1 = additive_negation(m1, "first factor");
    auto neg2 = additive_negation(m2, "second factor");
    for (int v = 0; v < n1; ++v)
      for (int w = 0; w < n2; ++w) rules.push_back({{t.generator(neg1[v], w)}, {t.generator(v, neg2[w])}});
  }
  t.closure = close_congruence(n1 * n2, std::move(rules), options.bound, options.budget);
  return t;
}

Tensor build_tensor(const TModule& m1, const TModule& m2, const TensorOptions& options) {
  return build_tensor(m1, m2, m2.left_action().monoid, options);
}

// ---------------------------------------------------------------- oracle

namespace {

struct Constraint {
  std::vector<int> lhs, rhs;
};

// Backtracking over maps generators -> [0, k) subject to equalities checked at their last generator.
std::vector<std::vector<int>> solve(int gens, const TModule& target, const std::vector<Constraint>& cons, double cap,
                                    double& nodes) {
  std::vector<std::vector<int>> bucket(gens);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    int hi = 0;
    for (int g : cons[i].lhs) hi = std::max(hi, g);
    for (int g : cons[i].rhs) hi = std::max(hi, g);
    bucket[hi].push_back(static_cast<int>(i));
  }
  const int k = target.size();
  std::vector<int> val(gens, 0);
  std::vector<std::vector<int>> out;
  auto eval = [&](const std::vector<int>& t) {
    int v = val[t[0]];
    for (std::size_t i = 1; i < t.size(); ++i) v = target.add(v, val[t[i]]);
    return v;
  };
  std::function<void(int)> rec = [&](int g) {
    if (g == gens) {
      out.push_back(val);
      return;
    }
    for (int x = 0; x < k; ++x) {
      if (++nodes > cap) throw CapExceeded("balanced-map enumeration exceeds cap", nodes, cap);
      val[g] = x;
      bool ok = true;
      for (int ci : bucket[g])
        if (eval(cons[ci].lhs) != eval(cons[ci].rhs)) {
          ok = false;
          break;
        }
      if (ok) rec(g + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<TModule> default_oracle_targets() {
  return {boolean_module_trivial(), cyclic_module(2), cyclic_module(3), chain_module(3), one_point_module()};
}

Report universal_property_oracle(const Tensor& t, const std::vector<TModule>& targets, double cap) {
  require_saturated(t.closure, "universal property oracle");
  const CongruenceClosure& c = t.closure;
  const TModule& m1 = t.m1;
  const TModule& m2 = t.m2;
  const int n1 = m1.size(), n2 = m2.size(), gens = n1 * n2;
  const Action& r1 = m1.right_action();
  const Action& l2 = m2.left_action();
  auto gen = [&](int i, int j) { return i * n2 + j; };

  // balanced: definitional equalities straight from the module tables
  std::vector<Constraint> balanced;
  for (int v = 0; v < n1; ++v)
    for (int w = 0; w < n1; ++w)
      for (int x = 0; x < n2; ++x) balanced.push_back({{gen(m1.add(v, w), x)}, {gen(v, x), gen(w, x)}});
  for (int x = 0; x < n1; ++x)
    for (int v = 0; v < n2; ++v)
      for (int w = 0; w < n2; ++w) balanced.push_back({{gen(x, m2.add(v, w))}, {gen(x, v), gen(x, w)}});
  for (int v = 0; v < n1; ++v)
    for (int a = 0; a < t.over.size(); ++a)
      for (int w = 0; w < n2; ++w) balanced.push_back({{gen(r1(a, v), w)}, {gen(v, l2(a, w))}});
  if (t.negation) {
    auto neg1 = additive_negation(m1, "first factor");
    auto neg2 = additive_negation(m2, "second factor");
    for (int v = 0; v < n1; ++v)
      for (int w = 0; w < n2; ++w) balanced.push_back({{gen(neg1[v], w)}, {gen(v, neg2[w])}});
  }
  // class-respecting: every enumerated term agrees with its class representative
  std::vector<Constraint> respecting;
  for (int cl = 0; cl < c.class_count(); ++cl) {
    auto rep = c.space.term(c.representative(cl));
    std::vector<int> r(rep.begin(), rep.end());
    for (int id : c.members[cl]) {
      if (id == c.representative(cl)) continue;
      auto tm = c.space.term(id);
      respecting.push_back({r, std::vector<int>(tm.begin(), tm.end())});
    }
  }

  Checker chk;
  const int k = c.class_count();
  std::vector<char> separated(static_cast<std::size_t>(k) * k, 0);
  double nodes = 0;
  chk.axiom("balanced_is_class_respecting");
  chk.axiom("class_respecting_is_balanced");
  chk.axiom("factorization_additive");
  chk.axiom("factorization_unique");
  chk.axiom("separation");
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const TModule& n = targets[ti];
    auto a = solve(gens, n, balanced, cap, nodes);
    auto b = solve(gens, n, respecting, cap, nodes);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    chk.fact("target" + std::to_string(ti) + ".balanced_maps", !a.empty());
    chk.note("target " + std::to_string(ti) + " (" + std::to_string(n.size()) + " elements): " +
             std::to_string(a.size()) + " balanced maps, " + std::to_string(b.size()) + " class-respecting maps");
    for (const auto& psi : a)
      if (!std::binary_search(b.begin(), b.end(), psi)) chk.fail("balanced_is_class_respecting", psi);
    for (const auto& psi : b)
      if (!std::binary_search(a.begin(), a.end(), psi)) chk.fail("class_respecting_is_balanced", psi);
    std::set<std::vector<int>> factors;
    for (const auto& psi : a) {
      std::vector<int> phi(k);
      for (int cl = 0; cl < k; ++cl) {
        auto rep = c.space.term(c.representative(cl));
        int v = psi[rep[0]];
        for (std::size_t i = 1; i < rep.size(); ++i) v = n.add(v, psi[rep[i]]);
        phi[cl] = v;
      }
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
          if (phi[c.add(x, y)] != n.add(phi[x], phi[y])) chk.fail("factorization_additive", {x, y});
      for (int g = 0; g < gens; ++g)
        if (phi[c.generator_class(g)] != psi[g]) chk.fail("factorization_unique", {g});
      factors.insert(phi);
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
          if (phi[x] != phi[y]) separated[static_cast<std::size_t>(x) * k + y] = 1;
    }
    if (factors.size() != a.size()) chk.fail("factorization_unique", {static_cast<int>(ti)});
  }
  for (int x = 0; x < k; ++x)
    for (int y = x + 1; y < k; ++y)
      if (!separated[static_cast<std::size_t>(x) * k + y]) chk.fail("separation", {x, y});
  return chk.take();
}

// ---------------------------------------------------------------- tensor pair

Pair tensor_pair(const Pair& p1, const Pair& p2, const Tensor& t, Report* report) {
  require_saturated(t.closure, "tensor pair");
  Checker chk;
  Pair out;
  out.module = t.to_module(&chk.report());
  const int k = t.class_count();
  std::vector<bool> zero(k, false);
  std::vector<int> queue;
  for (int i = 0; i < t.m1.size(); ++i)
    for (int j = 0; j < t.m2.size(); ++j)
      if (p1.zero_set[i] || p2.zero_set[j]) {
        int c = t.simple(i, j);
        if (!zero[c]) {
          zero[c] = true;
          queue.push_back(c);
        }
      }
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t r = 0; r <= q; ++r) {
      int s = t.closure.add(queue[q], queue[r]);
      if (!zero[s]) {
        zero[s] = true;
        queue.push_back(s);
      }
    }
  out.zero_set = zero;
  if (p1.embedding && p2.one() && out.module.left && p1.module.left &&
      out.module.left->monoid == p1.module.left->monoid) {
    std::vector<int> emb;
    for (int e : *p1.embedding) emb.push_back(t.simple(e, *p2.one()));
    out.embedding = emb;
  }
  chk.axiom("prepair.add");
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      if (zero[x] && zero[y]) chk.expect(zero[t.closure.add(x, y)], "prepair.add", {x, y});
  for (auto [act, tag] : {std::pair{&out.module.left, "prepair.left"}, std::pair{&out.module.right, "prepair.right"}}) {
    if (!*act) continue;
    chk.axiom(tag);
    for (int a = 0; a < (*act)->monoid.size(); ++a)
      for (int x = 0; x < k; ++x)
        if (zero[x]) chk.expect(zero[(**act)(a, x)], tag, {a, x});
  }
  chk.fact("proper", std::find(zero.begin(), zero.end(), false) != zero.end());
  if (report) *report = chk.take();
  return out;
}

// ---------------------------------------------------------------- free codec

int FreeCodec::vector_count() const {
  double v = std::pow(static_cast<double>(m1.size()), rank());
  if (v > 1e7) throw CapExceeded("codec vector space too large", v, 1e7);
  return static_cast<int>(v);
}

std::vector<int> FreeCodec::decode(int x) const {
  std::vector<int> v(rank());
  for (int i = 0; i < rank(); ++i) {
    v[i] = x % m1.size();
    x /= m1.size();
  }
  return v;
}

int FreeCodec::encode(const std::vector<int>& v) const {
  int x = 0;
  for (int i = rank() - 1; i >= 0; --i) x = x * m1.size() + v[i];
  return x;
}

int FreeCodec::encode_simple(int v, int w) const {
  const Action& r1 = m1.right_action();
  std::vector<int> out(rank());
  for (int i = 0; i < rank(); ++i) {
    int a = coordinates[w][i];
    out[i] = a < 0 ? m1.zero : r1(a, v);
  }
  return encode(out);
}

int FreeCodec::add(int x, int y) const {
  auto a = decode(x), b = decode(y);
  for (int i = 0; i < rank(); ++i) a[i] = m1.add(a[i], b[i]);
  return encode(a);
}

std::string FreeCodec::label(int x) const {
  auto v = decode(x);
  std::string s = "(";
  for (int i = 0; i < rank(); ++i) s += (i ? "," : "") + m1.carrier[v[i]];
  return s + ")";
}

FreeCodec free_normal_form(const TModule& m1, const TModule& m2, const std::vector<int>& base) {
  validate(m1);
  validate(m2);
  if (!(m1.right_action().monoid == m2.left_action().monoid))
    throw InputError("codec factors act by different monoids");
  FreeCodec c;
  c.m1 = m1;
  c.m2 = m2;
  c.base = base;
  if (base.empty()) throw InputError("free base is empty");
  // An omitted coordinate is read as 𝟘⊗b, which only the slide by an absorbing element provides.
  if (!m2.left_action().monoid.absorbing) throw InputError("free normal form needs an absorbing monoid element");
  if (!is_free_base(m2, base, &c.coordinates)) throw InputError("base is not free");
  (void)c.vector_count();
  return c;
}

Report compare_codec(const Tensor& t, const FreeCodec& codec, std::vector<int>* map) {
  auto im = t.from_simple([&](int i, int j) { return codec.encode_simple(i, j); },
                          [&](int x, int y) { return codec.add(x, y); });
  Checker chk;
  chk.report().merge(im.report, "codec");
  chk.axiom("injective");
  std::map<int, int> seen;
  for (int c = 0; c < t.class_count(); ++c) {
    auto [it, fresh] = seen.emplace(im.map[c], c);
    if (!fresh) chk.fail("injective", {it->second, c});
  }
  if (t.saturated()) {
    const int nv = codec.vector_count();
    chk.axiom("surjective");
    chk.axiom("round_trip");
    for (int x = 0; x < nv; ++x) {
      if (!seen.count(x)) chk.fail("surjective", {x});
      auto v = codec.decode(x);
      std::vector<int> gens;
      for (int i = 0; i < codec.rank(); ++i) gens.push_back(t.generator(v[i], codec.base[i]));
      auto cl = t.closure.classify(gens);
      chk.expect(cl && im.map[*cl] == x, "round_trip", {x});
    }
  } else {
    chk.note("closure not saturated; surjectivity not checked");
  }
  if (map) *map = im.map;
  return chk.take();
}

// ---------------------------------------------------------------- homomorphisms

InducedMap tensor_of_homs(const Tensor& src, const Tensor& dst, const std::vector<int>& f1,
                          const std::vector<int>& f2) {
  require_saturated(dst.closure, "tensor of homomorphisms (target)");
  if (static_cast<int>(f1.size()) != src.m1.size() || static_cast<int>(f2.size()) != src.m2.size())
    throw InputError("homomorphism tables do not match the source factors");
  auto im = src.from_simple([&](int i, int j) { return dst.simple(f1[i], f2[j]); },
                            [&](int x, int y) { return dst.closure.add(x, y); });
  if (!im.ok()) im.report.notes.push_back("internal consistency: verified homomorphisms should induce a class map");
  return im;
}

Report check_inverse_pair(const TModule& a, const TModule& b, const std::vector<int>& f, const std::vector<int>& g) {
  Checker chk;
  if (static_cast<int>(f.size()) != a.size() || static_cast<int>(g.size()) != b.size()) {
    chk.fail("shape", {static_cast<int>(f.size()), static_cast<int>(g.size())});
    return chk.take();
  }
  chk.axiom("forward_additive");
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      chk.expect(f[a.add(x, y)] == b.add(f[x], f[y]), "forward_additive", {x, y});
  chk.axiom("backward_additive");
  for (int x = 0; x < b.size(); ++x)
    for (int y = 0; y < b.size(); ++y)
      chk.expect(g[b.add(x, y)] == a.add(g[x], g[y]), "backward_additive", {x, y});
  chk.axiom("left_inverse");
  for (int x = 0; x < a.size(); ++x) chk.expect(g[f[x]] == x, "left_inverse", {x});
  chk.axiom("right_inverse");
  for (int y = 0; y < b.size(); ++y) chk.expect(f[g[y]] == y, "right_inverse", {y});
  auto equi = [&](const std::optional<Action>& p, const std::optional<Action>& q, const char* tag) {
    if (!p || !q || !(p->monoid == q->monoid)) return;
    chk.axiom(tag);
    for (int t = 0; t < p->monoid.size(); ++t)
      for (int x = 0; x < a.size(); ++x) chk.expect(f[(*p)(t, x)] == (*q)(t, f[x]), tag, {t, x});
  };
  equi(a.left, b.left, "left_equivariant");
  equi(a.right, b.right, "right_equivariant");
  return chk.take();
}

namespace {

// Class map of a tensor whose first factor is itself a tensor module: [x ⊗ c] ↦ Σ over the representative of x.
std::vector<int> nested_value(const Tensor& outer, const Tensor& inner,
                              const std::function<int(int, int, int)>& simple3,
                              const std::function<int(int, int)>& add, bool inner_first) {
  std::vector<int> gv(static_cast<std::size_t>(outer.m1.size()) * outer.m2.size());
  for (int g = 0; g < static_cast<int>(gv.size()); ++g) {
    int x = inner_first ? outer.first(g) : outer.second(g);
    int other = inner_first ? outer.second(g) : outer.first(g);
    int v = -1;
    for (int ig : inner.closure.space.term(inner.closure.representative(x))) {
      int s = simple3(inner.first(ig), inner.second(ig), other);
      v = v < 0 ? s : add(v, s);
    }
    gv[g] = v;
  }
  return gv;
}

IsoCase unit_case(const std::string& name, const TModule& t_as_module, const TModule& m, bool unit_on_left,
                  const TensorOptions& opt) {
  IsoCase ic{name, false, {}};
  try {
    const Action act = unit_on_left ? m.left_action() : m.right_action();
    Tensor t = unit_on_left ? build_tensor(t_as_module, m, opt) : build_tensor(m, t_as_module, m.right_action().monoid, opt);
    TModule tm = t.to_module(&ic.report);
    auto monoid_of = [&](int i) { return act.monoid.index_of(t_as_module.carrier[i]); };
    auto f = unit_on_left ? t.from_simple([&](int a, int w) { return act(monoid_of(a), w); },
                                          [&](int x, int y) { return m.add(x, y); })
                          : t.from_simple([&](int w, int a) { return act(monoid_of(a), w); },
                                          [&](int x, int y) { return m.add(x, y); });
    ic.report.merge(f.report, "forward");
    const int one = act.monoid.identity;
    int one_elem = t_as_module.index_of(act.monoid.elements[one]);
    std::vector<int> g(m.size());
    for (int w = 0; w < m.size(); ++w) g[w] = unit_on_left ? t.simple(one_elem, w) : t.simple(w, one_elem);
    ic.report.merge(check_inverse_pair(tm, m, f.map, g), "iso");
  } catch (const Undetermined& e) {
    ic.undetermined = true;
    ic.report.notes.push_back(e.what());
  }
  return ic;
}

// (M⊕M′)⊗N ≅ (M⊗N)⊕(M′⊗N) when sum_left, else M⊗(N⊕N′) ≅ (M⊗N)⊕(M⊗N′).
IsoCase sum_case(const std::string& name, const TModule& x, const TModule& y, const TModule& other, bool sum_left,
                 const FiniteMonoid& over, const TensorOptions& opt) {
  IsoCase ic{name, false, {}};
  try {
    TModule s = direct_sum(x, y);
    Tensor big = sum_left ? build_tensor(s, other, over, opt) : build_tensor(other, s, over, opt);
    Tensor tx = sum_left ? build_tensor(x, other, over, opt) : build_tensor(other, x, over, opt);
    Tensor ty = sum_left ? build_tensor(y, other, over, opt) : build_tensor(other, y, over, opt);
    TModule bm = big.to_module(&ic.report);
    TModule dm = direct_sum(tx.to_module(&ic.report), ty.to_module(&ic.report));
    const int ny = y.size();
    const int ky = ty.class_count();
    auto f = big.from_simple(
        [&](int i, int j) {
          if (sum_left) return tx.simple(i / ny, j) * ky + ty.simple(i % ny, j);
          return tx.simple(i, j / ny) * ky + ty.simple(i, j % ny);
        },
        [&](int p, int q) { return dm.add(p, q); });
    ic.report.merge(f.report, "forward");
    auto ix = tx.from_simple(
        [&](int i, int j) { return sum_left ? big.simple(i * ny + y.zero, j) : big.simple(i, j * ny + y.zero); },
        [&](int p, int q) { return big.closure.add(p, q); });
    auto iy = ty.from_simple(
        [&](int i, int j) { return sum_left ? big.simple(x.zero * ny + i, j) : big.simple(i, x.zero * ny + j); },
        [&](int p, int q) { return big.closure.add(p, q); });
    ic.report.merge(ix.report, "inclusion1");
    ic.report.merge(iy.report, "inclusion2");
    std::vector<int> g(dm.size());
    for (int p = 0; p < dm.size(); ++p) g[p] = big.closure.add(ix.map[p / ky], iy.map[p % ky]);
    ic.report.merge(check_inverse_pair(bm, dm, f.map, g), "iso");
  } catch (const Undetermined& e) {
    ic.undetermined = true;
    ic.report.notes.push_back(e.what());
  }
  return ic;
}

// (M⊕M′)⊗(N⊕N′) ≅ (M⊗N)⊕(M⊗N′)⊕(M′⊗N)⊕(M′⊗N′), nested left to right.
IsoCase double_sum_case(const std::string& name, const TModule& x, const TModule& xp, const TModule& y,
                        const TModule& yp, const FiniteMonoid& over, const TensorOptions& opt) {
  IsoCase ic{name, false, {}};
  try {
    Tensor big = build_tensor(direct_sum(x, xp), direct_sum(y, yp), over, opt);
    const TModule* lefts[2] = {&x, &xp};
    const TModule* rights[2] = {&y, &yp};
    std::vector<Tensor> parts;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) parts.push_back(build_tensor(*lefts[a], *rights[b], over, opt));
    TModule bm = big.to_module(&ic.report);
    TModule dm = parts[0].to_module(&ic.report);
    for (int p = 1; p < 4; ++p) dm = direct_sum(dm, parts[p].to_module(&ic.report));
    std::vector<int> sizes;
    for (const auto& p : parts) sizes.push_back(p.class_count());
    auto pack = [&](const std::array<int, 4>& c) {
      int v = c[0];
      for (int p = 1; p < 4; ++p) v = v * sizes[p] + c[p];
      return v;
    };
    const int nxp = xp.size(), nyp = yp.size();
    auto f = big.from_simple(
        [&](int i, int j) {
          int i0 = i / nxp, i1 = i % nxp, j0 = j / nyp, j1 = j % nyp;
          return pack({parts[0].simple(i0, j0), parts[1].simple(i0, j1), parts[2].simple(i1, j0),
                       parts[3].simple(i1, j1)});
        },
        [&](int p, int q) { return dm.add(p, q); });
    ic.report.merge(f.report, "forward");
    std::vector<std::vector<int>> inc;
    for (int p = 0; p < 4; ++p) {
      int a = p / 2, b = p % 2;
      auto im = parts[p].from_simple(
          [&](int i, int j) {
            int bi = a == 0 ? i * nxp + xp.zero : x.zero * nxp + i;
            int bj = b == 0 ? j * nyp + yp.zero : y.zero * nyp + j;
            return big.simple(bi, bj);
          },
          [&](int u, int v) { return big.closure.add(u, v); });
      ic.report.merge(im.report, "inclusion" + std::to_string(p));
      inc.push_back(im.map);
    }
    std::vector<int> g(dm.size());
    for (int q = 0; q < dm.size(); ++q) {
      std::array<int, 4> c{};
      int r = q;
      for (int p = 3; p >= 0; --p) {
        c[p] = r % sizes[p];
        r /= sizes[p];
      }
      int v = inc[0][c[0]];
      for (int p = 1; p < 4; ++p) v = big.closure.add(v, inc[p][c[p]]);
      g[q] = v;
    }
    ic.report.merge(check_inverse_pair(bm, dm, f.map, g), "iso");
  } catch (const Undetermined& e) {
    ic.undetermined = true;
    ic.report.notes.push_back(e.what());
  }
  return ic;
}

IsoCase assoc_case(const std::string& name, const TModule& a, const TModule& b, const TModule& c,
                   const FiniteMonoid& over, const TensorOptions& opt) {
  IsoCase ic{name, false, {}};
  try {
    Tensor ab = build_tensor(a, b, over, opt);
    Tensor bc = build_tensor(b, c, over, opt);
    TModule abm = ab.to_module(&ic.report);
    TModule bcm = bc.to_module(&ic.report);
    Tensor lhs = build_tensor(abm, c, over, opt);
    Tensor rhs = build_tensor(a, bcm, over, opt);
    auto radd = [&](int p, int q) { return rhs.closure.add(p, q); };
    auto ladd = [&](int p, int q) { return lhs.closure.add(p, q); };
    require_saturated(rhs.closure, "associativity target");
    auto fv = nested_value(lhs, ab, [&](int x, int y, int z) { return rhs.simple(x, bc.simple(y, z)); }, radd, true);
    auto f = induce(lhs.closure, fv, radd);
    auto gv = nested_value(rhs, bc, [&](int y, int z, int x) { return lhs.simple(ab.simple(x, y), z); }, ladd, false);
    auto g = induce(rhs.closure, gv, ladd);
    ic.report.merge(f.report, "forward");
    ic.report.merge(g.report, "backward");
    TModule lm = lhs.to_module(&ic.report);
    TModule rm = rhs.to_module(&ic.report);
    ic.report.merge(check_inverse_pair(lm, rm, f.map, g.map), "iso");
  } catch (const Undetermined& e) {
    ic.undetermined = true;
    ic.report.notes.push_back(e.what());
  }
  return ic;
}

IsoCase swap_case(const std::string& name, const TModule& a, const TModule& b, const FiniteMonoid& over,
                  const TensorOptions& opt) {
  IsoCase ic{name, false, {}};
  try {
    Tensor ab = build_tensor(a, b, over, opt);
    Tensor ba = build_tensor(b, a, over, opt);
    require_saturated(ab.closure, "swap");
    require_saturated(ba.closure, "swap");
    auto f = ab.from_simple([&](int i, int j) { return ba.simple(j, i); },
                            [&](int p, int q) { return ba.closure.add(p, q); });
    auto g = ba.from_simple([&](int i, int j) { return ab.simple(j, i); },
                            [&](int p, int q) { return ab.closure.add(p, q); });
    ic.report.merge(f.report, "forward");
    ic.report.merge(g.report, "backward");
    TModule am = ab.to_module(&ic.report);
    TModule bm = ba.to_module(&ic.report);
    am.left.reset();
    am.right.reset();
    bm.left.reset();
    bm.right.reset();
    ic.report.merge(check_inverse_pair(am, bm, f.map, g.map), "iso");
  } catch (const Undetermined& e) {
    ic.undetermined = true;
    ic.report.notes.push_back(e.what());
  }
  return ic;
}

}  // namespace

IsoCase check_direct_sum_iso(const TModule& x, const TModule& y, const TModule& other, bool sum_left,
                             const FiniteMonoid& over, const TensorOptions& options) {
  return sum_case(sum_left ? "sum.left" : "sum.right", x, y, other, sum_left, over, options);
}

std::vector<IsoCase> check_assoc_comm_dist(const TensorOptions& opt) {
  const TModule f3 = builtin_module("F3");
  const TModule f3sq = builtin_module("F3^2");
  const TModule b = boolean_module();
  const TModule b2 = boolean_power(2);
  const TModule z2 = cyclic_module(2);
  const TModule z3 = cyclic_module(3);
  const FiniteMonoid bool_m = boolean_monoid();
  const FiniteMonoid triv = trivial_monoid();
  std::vector<IsoCase> out;
  out.push_back(unit_case("unit.left.F3(F3^2)", f3, f3sq, true, opt));
  out.push_back(unit_case("unit.right.F3(F3^2)", f3, f3sq, false, opt));
  out.push_back(unit_case("unit.left.B(B^2)", b, b2, true, opt));
  out.push_back(unit_case("unit.right.B(B^2)", b, b2, false, opt));
  out.push_back(sum_case("sum.left.B", b, b, b, true, bool_m, opt));
  out.push_back(sum_case("sum.right.B", b, b, b, false, bool_m, opt));
  out.push_back(sum_case("sum.left.Z2,Z3", z2, z3, z3, true, triv, opt));
  out.push_back(double_sum_case("sum.both.B", b, b, b, b, bool_m, opt));
  out.push_back(assoc_case("assoc.F3", f3, f3, f3, multiplicative_monoid(finite_field(3)), opt));
  out.push_back(assoc_case("assoc.B", b, b, b, bool_m, opt));
  out.push_back(assoc_case("assoc.B,B^2,B", b, b2, b, bool_m, opt));
  out.push_back(swap_case("swap.B,B^2", b, b2, bool_m, opt));
  out.push_back(swap_case("swap.Z2,Z3", z2, z3, triv, opt));
  return out;
}

// ---------------------------------------------------------------- monoid tensor

MonoidTensor monoid_tensor(const FiniteMonoid& t1, const FiniteMonoid& t2, const FiniteMonoid& over,
                           const std::vector<int>& emb1, const std::vector<int>& emb2) {
  if (static_cast<int>(emb1.size()) != over.size() || static_cast<int>(emb2.size()) != over.size())
    throw InputError("monoid tensor embeddings must cover the base monoid");
  const int n1 = t1.size(), n2 = t2.size();
  std::vector<int> parent(n1 * n2);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int x1 = 0; x1 < n1; ++x1)
    for (int a = 0; a < over.size(); ++a)
      for (int x2 = 0; x2 < n2; ++x2) {
        int p = find(t1(x1, emb1[a]) * n2 + x2), q = find(x1 * n2 + t2(emb2[a], x2));
        if (p != q) parent[std::max(p, q)] = std::min(p, q);
      }
  MonoidTensor mt;
  mt.class_of.assign(n1 * n2, -1);
  std::map<int, int> root_class;
  for (int x = 0; x < n1 * n2; ++x) {
    auto [it, fresh] = root_class.emplace(find(x), static_cast<int>(mt.members.size()));
    if (fresh) mt.members.emplace_back();
    mt.class_of[x] = it->second;
    mt.members[it->second].push_back(x);
  }
  const int k = mt.class_count();
  FiniteMonoid m;
  m.op = Table(k, k);
  bool ok = true;
  for (int c = 0; c < k && ok; ++c)
    for (int d = 0; d < k && ok; ++d) {
      int v = -1;
      for (int x : mt.members[c])
        for (int y : mt.members[d]) {
          int p = mt.class_of[t1(x / n2, y / n2) * n2 + t2(x % n2, y % n2)];
          if (v < 0) v = p;
          ok = ok && v == p;
        }
      m.op(c, d) = v;
    }
  if (ok) {
    for (int c = 0; c < k; ++c) {
      int x = mt.members[c].front();
      m.elements.push_back(t1.elements[x / n2] + "⊗" + t2.elements[x % n2]);
    }
    m.identity = mt.class_of[t1.identity * n2 + t2.identity];
    if (t1.absorbing && t2.absorbing) {
      int z = mt.class_of[*t1.absorbing * n2 + *t2.absorbing];
      bool absorbs = true;
      for (int c = 0; c < k; ++c) absorbs = absorbs && m.op(z, c) == z && m.op(c, z) == z;
      if (absorbs) m.absorbing = z;
    }
    mt.monoid = m;
  }
  return mt;
}

Report check_monoid_tensor_action(const MonoidTensor& mt, const FiniteMonoid& t1, const FiniteMonoid& t2,
                                  const Tensor& t) {
  Checker chk;
  TModule tm = t.to_module(&chk.report());
  if (!tm.left || !(tm.left->monoid == t1) || !tm.right || !(tm.right->monoid == t2)) {
    chk.fail("actions_available", {});
    return chk.take();
  }
  const int n2 = t2.size();
  chk.axiom("action_well_defined");
  for (int c = 0; c < mt.class_count(); ++c) {
    int x0 = mt.members[c].front();
    for (int x : mt.members[c])
      for (int b = 0; b < tm.size(); ++b) {
        int u = (*tm.right)(x0 % n2, (*tm.left)(x0 / n2, b));
        int v = (*tm.right)(x % n2, (*tm.left)(x / n2, b));
        chk.expect(u == v, "action_well_defined", {c, x, b});
      }
  }
  return chk.take();
}

// ---------------------------------------------------------------- tensor extension

Extension tensor_extension(const FiniteMonoid& tprime, const std::vector<int>& embedding, const TModule& m,
                           bool admissible, const TensorOptions& options) {
  validate(tprime);
  validate(m);
  const Action& l = m.left_action();
  const FiniteMonoid& t = l.monoid;
  if (static_cast<int>(embedding.size()) != t.size()) throw InputError("embedding must cover the acting monoid");
  for (int a = 0; a < t.size(); ++a)
    for (int b = 0; b < t.size(); ++b)
      if (tprime(embedding[a], embedding[b]) != embedding[t(a, b)])
        throw InputError("embedding is not multiplicative");
  if (embedding[t.identity] != tprime.identity) throw InputError("embedding must preserve the identity");
  Extension e;
  e.tprime = tprime;
  e.embedding = embedding;
  e.m = m;
  e.admissible = admissible;
  const int n = m.size();
  std::vector<bool> in_image(tprime.size(), false);
  for (int x : embedding) in_image[x] = true;
  std::vector<Rule> rules;
  for (int ap = 0; ap < tprime.size(); ++ap) {
    if (!admissible || in_image[ap])
      for (int v = 0; v < n; ++v)
        for (int w = v; w < n; ++w) rules.push_back({{e.generator(ap, m.add(v, w))}, {e.generator(ap, v), e.generator(ap, w)}});
    for (int a = 0; a < t.size(); ++a)
      for (int w = 0; w < n; ++w) rules.push_back({{e.generator(tprime(ap, embedding[a]), w)}, {e.generator(ap, l(a, w))}});
  }
  e.closure = close_congruence(tprime.size() * n, std::move(rules), options.bound, options.budget);
  return e;
}

TModule Extension::to_module(Report* report) const {
  require_saturated(closure, "tensor extension");
  const int n = m.size();
  TModule out;
  for (int c = 0; c < closure.class_count(); ++c) {
    std::string s;
    for (int g : closure.space.term(closure.representative(c))) {
      if (!s.empty()) s += " + ";
      s += tprime.elements[g / n] + "⊗" + m.carrier[g % n];
    }
    out.carrier.push_back(s);
  }
  out.add = closure.class_add;
  out.zero = closure.generator_class(generator(tprime.identity, m.zero));
  Table act(tprime.size(), closure.class_count());
  bool ok = true;
  for (int b = 0; b < tprime.size(); ++b) {
    std::vector<int> gv(static_cast<std::size_t>(tprime.size()) * n);
    for (int g = 0; g < static_cast<int>(gv.size()); ++g) gv[g] = closure.generator_class(generator(tprime(b, g / n), g % n));
    auto im = induce(closure, gv, [&](int x, int y) { return closure.add(x, y); });
    if (!im.ok()) {
      ok = false;
      if (report) report->merge(im.report, "action");
      continue;
    }
    for (int c = 0; c < closure.class_count(); ++c) act(b, c) = im.map[c];
  }
  if (ok) out.left = Action{tprime, act};
  return out;
}

// ---------------------------------------------------------------- NR tensor

std::string NRTensor::label(int x) const { return h1.carrier[x / h2.size()] + "⊗" + h2.carrier[x % h2.size()]; }

std::string NRTensor::subset(Subset s) const {
  std::string out = "{";
  bool first = true;
  for (int x : members(s)) {
    out += (first ? "" : ",") + label(x);
    first = false;
  }
  return out + "}";
}

NRTensor nr_tensor(const Hypermagma& h1, const Hypermagma& h2) {
  validate(h1);
  validate(h2);
  if (h1.size() * h2.size() > kMaxCarrier) throw InputError("NR tensor carrier exceeds 64 simple tensors");
  return {h1, h2};
}

Subset nr_add(const NRTensor& t, int x, int y) {
  const int n2 = t.h2.size();
  const int i = x / n2, j = x % n2, ip = y / n2, jp = y % n2;
  Subset out = 0;
  if (j == jp)
    for (int a : members(t.h1.add(i, ip))) out |= singleton(t.simple(a, j));
  if (i == ip)
    for (int b : members(t.h2.add(j, jp))) out |= singleton(t.simple(i, b));
  return out;
}

Subset nr_add(const NRTensor& t, Subset x, Subset y) {
  Subset out = 0;
  for (int a : members(x))
    for (int b : members(y)) out |= nr_add(t, a, b);
  return out;
}

Hypermagma NRTensor::hypermagma() const {
  Hypermagma h;
  for (int x = 0; x < size(); ++x) h.carrier.push_back(label(x));
  h.table.assign(static_cast<std::size_t>(size()) * size(), 0);
  for (int x = 0; x < size(); ++x)
    for (int y = 0; y < size(); ++y) h.at(x, y) = nr_add(*this, x, y);
  return h;
}

NRWitness nr_assoc_counterexample() {
  const Hypermagma h = builtin_hypermagma("tropical_chain", 2);
  NRWitness w;
  w.tensor = nr_tensor(h, h);
  w.v1 = w.w1 = h.index_of("2");
  w.v2 = w.w2 = h.index_of("1");
  const NRTensor& t = w.tensor;
  const Subset a = singleton(t.simple(w.v1, w.w1)), b = singleton(t.simple(w.v1, w.w2)),
               c = singleton(t.simple(w.v2, w.w1)), d = singleton(t.simple(w.v2, w.w2));
  w.first = nr_add(t, nr_add(t, a, b), nr_add(t, c, d));
  w.second = nr_add(t, a, nr_add(t, nr_add(t, b, c), d));
  return w;
}

// ---------------------------------------------------------------- recombination

RecombinationChain recombination_chain(const Tensor& t, int v1, int v2) {
  if (!(t.m1 == t.m2)) throw InputError("recombination needs M ⊗ M");
  const TModule& m = t.m1;
  if (v1 < 0 || v1 >= m.size() || v2 < 0 || v2 >= m.size()) throw InputError("element out of range");
  RecombinationChain out;
  out.v1 = v1;
  out.v2 = v2;
  out.v3 = m.add(v1, v2);
  const int v3 = out.v3;
  auto g = [&](int a, int b) { return t.generator(a, b); };
  auto name = [&](int a, int b) { return m.carrier[a] + "⊗" + m.carrier[b]; };
  auto cls = [&](std::vector<int> gens) {
    auto c = t.closure.classify(std::move(gens));
    if (!c) throw Undetermined("recombination term beyond the bound", static_cast<std::size_t>(t.closure.bound()));
    return *c;
  };

  out.steps = {
      "(" + name(v3, v2) + ")+(((" + name(v2, v1) + ")+(" + name(v2, v2) + "))+(" + name(v1, v3) + "))",
      "(" + name(v3, v2) + ")+((" + name(v2, v3) + ")+(" + name(v1, v3) + "))",
      "(" + name(v3, v2) + ")+(" + name(v3, v3) + ")",
      name(v3, m.add(v2, v3)),
  };
  out.classes = {
      cls({g(v3, v2), g(v2, v1), g(v2, v2), g(v1, v3)}),
      cls({g(v3, v2), g(v2, v3), g(v1, v3)}),
      cls({g(v3, v2), g(v3, v3)}),
      cls({g(v3, m.add(v2, v3))}),
  };
  Checker c;
  c.axiom("steps_equal");
  for (std::size_t i = 1; i < out.classes.size(); ++i)
    c.expect(out.classes[i] == out.classes[0], "steps_equal", {static_cast<int>(i)});
  // Both bracketed halves are non-simple in the quotient.
  auto simple = [&](int k) {
    for (int a = 0; a < m.size(); ++a)
      for (int b = 0; b < m.size(); ++b)
        if (t.simple(a, b) == k) return true;
    return false;
  };
  int left = cls({g(v3, v2), g(v2, v1)}), right = cls({g(v2, v2), g(v1, v3)});
  c.fact("first_half_simple", simple(left));
  c.fact("second_half_simple", simple(right));
  c.fact("saturated", t.saturated());
  out.report = c.take();
  return out;
}

// ---------------------------------------------------------------- residue tensors

Tensor hyperpair_tensor(const Hyperpair& p1, const Hyperpair& p2, const TensorOptions& options) {
  if (!(p1.tangible_monoid == p2.tangible_monoid))
    throw InputError("hyperpairs have different tangible monoids");
  return build_tensor(p1.to_module(), p2.to_module(), p1.tangible_monoid, options);
}

ResidueTensorIso residue_tensor_iso(const TModule& m1, const Subgroup& g1, const TModule& m2,
                                    const Subgroup& g2, const TensorOptions& options) {
  ResidueTensorIso out;
  Checker chk;
  try {
    ResidueHypermodule r1 = residue(m1, g1);
    ResidueHypermodule r2 = residue(m2, g2);
    Hyperpair h1 = build_hyperpair(r1.hypermagma);
    Hyperpair h2 = build_hyperpair(r2.hypermagma);
    out.lhs = hyperpair_tensor(h1, h2, options);
    out.base = build_tensor(m1, m2, options);
    require_saturated(out.lhs.closure, "residue tensor (quotient side)");
    require_saturated(out.base.closure, "residue tensor (module side)");
    const Tensor& base = out.base;
    TModule bm = base.to_module(&chk.report());

    std::vector<std::vector<int>> actions;
    const Action& l1 = m1.left_action();
    const Action& rr2 = m2.right_action();
    for (int a : g1.members)
      for (int b : g2.members) {
        auto im = base.from_simple([&](int i, int j) { return base.simple(l1(a, i), rr2(b, j)); },
                                   [&](int x, int y) { return base.closure.add(x, y); });
        chk.report().merge(im.report, "group_action");
        actions.push_back(im.map);
      }
    ResidueHypermodule rt = orbit_residue(bm, actions);
    out.rhs = build_hyperpair(rt.hypermagma);

    // natural map y₁⊗y₂ ↦ y₁G₁⊗y₂G₂; sums of cosets are sets, so rules are compared under ⊆
    {
      SurpassingRelation inc = tensor_inclusion(out.lhs, h1, h2);
      std::vector<int> gv(static_cast<std::size_t>(m1.size()) * m2.size());
      for (int g = 0; g < static_cast<int>(gv.size()); ++g)
        gv[g] = out.lhs.simple(h1.index(singleton(r1.projection[base.first(g)])),
                               h2.index(singleton(r2.projection[base.second(g)])));
      auto eval = [&](const std::vector<int>& t) {
        int v = gv[t[0]];
        for (std::size_t i = 1; i < t.size(); ++i) v = out.lhs.closure.add(v, gv[t[i]]);
        return v;
      };
      chk.axiom("natural_map.rule_inclusion");
      for (std::size_t i = 0; i < base.closure.rules.size(); ++i) {
        const Rule& r = base.closure.rules[i];
        const std::vector<int>& lo = r.lhs.size() <= r.rhs.size() ? r.lhs : r.rhs;
        const std::vector<int>& hi = r.lhs.size() <= r.rhs.size() ? r.rhs : r.lhs;
        int x = eval(lo), y = eval(hi);
        bool ok = inc(x, y) && (lo.size() < hi.size() || inc(y, x));
        chk.expect(ok, "natural_map.rule_inclusion", {static_cast<int>(i)});
      }
    }

    const Hyperpair& rhs = out.rhs;
    bool in_family = true;
    auto inducing = out.lhs.from_simple(
        [&](int s1, int s2) {
          Subset img = 0;
          for (int y : members(h1.family[s1]))
            for (int z : members(h2.family[s2]))
              for (int yy : r1.classes[y])
                for (int zz : r2.classes[z]) img |= singleton(rt.projection[base.simple(yy, zz)]);
          int idx = rhs.index(img);
          if (idx < 0) in_family = false;
          return std::max(idx, 0);
        },
        [&](int x, int y) { return rhs.add(x, y); });
    chk.axiom("image_in_family");
    if (!in_family) chk.fail("image_in_family", {});
    chk.report().merge(inducing.report, "congruence");
    out.map = inducing.map;
    chk.axiom("injective");
    chk.axiom("surjective");
    std::vector<int> hit(rhs.size(), -1);
    for (int c = 0; c < out.lhs.class_count(); ++c) {
      int v = out.map[c];
      if (hit[v] >= 0) chk.fail("injective", {hit[v], c});
      hit[v] = c;
    }
    for (int v = 0; v < rhs.size(); ++v)
      if (hit[v] < 0) chk.fail("surjective", {v});
    chk.fact("classes_equal", out.lhs.class_count() == rhs.size());
  } catch (const Undetermined& e) {
    out.undetermined = true;
    chk.note(e.what());
  }
  out.report = chk.take();
  return out;
}

// ---------------------------------------------------------------- ⊆-distributivity

SurpassingRelation tensor_inclusion(const Tensor& t, const Hyperpair& p1, const Hyperpair& p2) {
  require_saturated(t.closure, "tensor inclusion");
  const int k = t.class_count();
  SurpassingRelation rel;
  rel.n = k;
  rel.rel.assign(static_cast<std::size_t>(k) * k, 0);
  std::vector<std::pair<int, int>> base, all;
  for (int i = 0; i < p1.size(); ++i)
    for (int ip = 0; ip < p1.size(); ++ip) {
      if (!is_subset(p1.family[i], p1.family[ip])) continue;
      for (int j = 0; j < p2.size(); ++j)
        for (int jp = 0; jp < p2.size(); ++jp)
          if (is_subset(p2.family[j], p2.family[jp])) base.emplace_back(t.simple(i, j), t.simple(ip, jp));
    }
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  for (auto [x, y] : base)
    if (!rel(x, y)) {
      rel.set(x, y);
      all.emplace_back(x, y);
    }
  for (std::size_t q = 0; q < all.size(); ++q)
    for (auto [bx, by] : base) {
      int x = t.closure.add(all[q].first, bx), y = t.closure.add(all[q].second, by);
      if (!rel(x, y)) {
        rel.set(x, y);
        all.emplace_back(x, y);
      }
    }
  return rel;
}

Report subset_distributivity(const Hyperpair& p1, const Hyperpair& p2, const Tensor& t, double cap) {
  Checker chk;
  const double triples = static_cast<double>(p1.size()) * p2.size() * p2.size();
  if (triples > cap) throw CapExceeded("distributivity triples exceed cap", triples, cap);
  SurpassingRelation inc = tensor_inclusion(t, p1, p2);
  const Hypermagma& h2 = p2.base;
  chk.axiom("inclusion");
  std::size_t strict = 0;
  for (int s = 0; s < p1.size(); ++s)
    for (int s1 = 0; s1 < p2.size(); ++s1)
      for (int s2 = 0; s2 < p2.size(); ++s2) {
        const int rhs = t.closure.add(t.simple(s, s1), t.simple(s, s2));
        Subset sum = powerset_add(h2, p2.family[s1], p2.family[s2]);
        std::set<int> lhs_classes;
        for (int a : members(p1.family[s])) {
          int ia = p1.index(singleton(a));
          if (ia < 0) {
            chk.fail("inclusion", {s, s1, s2, a}, "singleton missing from the first family");
            continue;
          }
          for (int a2 : members(sum)) {
            int ib = p2.index(singleton(a2));
            if (ib < 0) {
              chk.fail("inclusion", {s, s1, s2, a2}, "singleton missing from the second family");
              continue;
            }
            int lhs = t.simple(ia, ib);
            lhs_classes.insert(lhs);
            chk.expect(inc(lhs, rhs), "inclusion", {s, s1, s2, a, a2});
          }
        }
        bool reverse = false;
        for (int x : lhs_classes) reverse = reverse || inc(rhs, x);
        if (!reverse && !lhs_classes.empty()) ++strict;
      }
  chk.fact("strict_somewhere", strict > 0);
  chk.note(std::to_string(strict) + " strict triples");
  return chk.take();
}

}  // namespace hyperalg
