#include "hyperalg/residue.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hyperalg {

namespace {

std::vector<int> digits(int x, int p, int k) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int x = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) x = x * p + d[i];
  return x;
}

std::string poly_label(const std::vector<int>& d) {
  std::string out;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    std::string term;
    if (i == 0) {
      term = std::to_string(d[i]);
    } else {
      term = d[i] == 1 ? "" : std::to_string(d[i]);
      term += i == 1 ? "x" : "x^" + std::to_string(i);
    }
    out += (out.empty() ? "" : "+") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

FiniteField finite_field(int order) {
  FiniteField f;
  f.order = order;
  std::vector<int> modulus;  // low to high, monic, length degree+1
  switch (order) {
    case 2: case 3: case 5: case 7:
      f.characteristic = order;
      f.degree = 1;
      break;
    case 4:
      f.characteristic = 2, f.degree = 2, modulus = {1, 1, 1}, f.modulus = "x^2+x+1";
      break;
    case 8:
      f.characteristic = 2, f.degree = 3, modulus = {1, 1, 0, 1}, f.modulus = "x^3+x+1";
      break;
    case 9:
      f.characteristic = 3, f.degree = 2, modulus = {1, 0, 1}, f.modulus = "x^2+1";
      break;
    default:
      throw InputError("finite fields are provided for orders 2,3,4,5,7,8,9");
  }
  const int p = f.characteristic, k = f.degree, q = order;
  for (int x = 0; x < q; ++x) f.labels.push_back(k == 1 ? std::to_string(x) : poly_label(digits(x, p, k)));
  f.add = Table(q, q);
  f.mul = Table(q, q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      auto da = digits(a, p, k), db = digits(b, p, k);
      std::vector<int> s(k);
      for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      f.add(a, b) = from_digits(s, p);
      std::vector<int> prod(2 * k, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (int i = 2 * k - 1; i >= k; --i) {
        int c = prod[i];
        if (!c) continue;
        for (int j = 0; j <= k; ++j) prod[i - k + j] = ((prod[i - k + j] - c * modulus[j]) % p + p) % p;
      }
      prod.resize(k);
      f.mul(a, b) = from_digits(prod, p);
    }
  return f;
}

FiniteMonoid multiplicative_monoid(const FiniteField& f) { return {f.labels, f.mul, 1, 0}; }

TModule field_module(const FiniteField& f) {
  TModule m;
  m.carrier = f.labels;
  m.add = f.add;
  m.zero = 0;
  m.left = Action{multiplicative_monoid(f), f.mul};
  m.right = m.left;
  m.unit = 1;
  m.mul = f.mul;
  return m;
}

TModule field_power_module(const FiniteField& f, int k) {
  if (k < 1) throw InputError("power must be positive");
  if (k == 1) return field_module(f);
  TModule m = field_module(f);
  for (int i = 1; i < k; ++i) m = direct_sum(m, field_module(f));
  m.unit.reset();
  m.mul.reset();
  // relabel as coordinate tuples
  const int q = f.order;
  int n = m.size();
  for (int x = 0; x < n; ++x) {
    std::string lab = "(";
    int y = x;
    std::vector<int> d(k);
    for (int i = k - 1; i >= 0; --i) {
      d[i] = y % q;
      y /= q;
    }
    for (int i = 0; i < k; ++i) lab += (i ? "," : "") + f.labels[d[i]];
    m.carrier[x] = lab + ")";
  }
  return m;
}

Subgroup subgroup(const FiniteMonoid& parent, const std::vector<std::string>& labels) {
  Subgroup g{parent, {}};
  for (const auto& l : labels) g.members.push_back(parent.index_of(l));
  std::sort(g.members.begin(), g.members.end());
  g.members.erase(std::unique(g.members.begin(), g.members.end()), g.members.end());
  return g;
}

Report check_subgroup(const Subgroup& g) {
  Checker c;
  std::set<int> in(g.members.begin(), g.members.end());
  const FiniteMonoid& t = g.parent;
  c.axiom("contains_identity");
  c.expect(in.count(t.identity) > 0, "contains_identity", {t.identity});
  c.axiom("closed");
  for (int a : g.members)
    for (int b : g.members) c.expect(in.count(t(a, b)) > 0, "closed", {a, b});
  c.axiom("inverses");
  for (int a : g.members) {
    bool ok = false;
    for (int b : g.members) ok = ok || (t(a, b) == t.identity && t(b, a) == t.identity);
    c.expect(ok, "inverses", {a});
  }
  return c.take();
}

ResidueHypermodule orbit_residue(const TModule& m, const std::vector<std::vector<int>>& actions) {
  const int n = m.size();
  if (n > kMaxCarrier) throw InputError("residue carrier exceeds 64 classes limit");
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> classes;
  for (int b = 0; b < n; ++b) {
    if (cls[b] >= 0) continue;
    std::vector<int> orbit{b};
    cls[b] = static_cast<int>(classes.size());
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (const auto& f : actions) {
        int y = f[orbit[i]];
        if (cls[y] < 0) {
          cls[y] = cls[b];
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  ResidueHypermodule r;
  r.classes = classes;
  r.projection = cls;
  Hypermagma& h = r.hypermagma;
  const int k = static_cast<int>(classes.size());
  for (const auto& c : classes) h.carrier.push_back(m.carrier[c.front()]);
  h.table.assign(static_cast<std::size_t>(k) * k, 0);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      Subset s = 0;
      for (int a : classes[x])
        for (int b : classes[y]) s |= singleton(cls[m.add(a, b)]);
      h.at(x, y) = s;
    }
  h.zero = cls[m.zero];
  if (m.mul) {
    Table mt(k, k);
    bool well_defined = true;
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) {
        int v = cls[(*m.mul)(classes[x].front(), classes[y].front())];
        for (int a : classes[x])
          for (int b : classes[y]) well_defined = well_defined && cls[(*m.mul)(a, b)] == v;
        mt(x, y) = v;
      }
    if (well_defined) {
      h.mul = mt;
      if (m.unit) h.one = cls[*m.unit];
    }
  }
  return r;
}

ResidueHypermodule residue(const TModule& m, const Subgroup& g) {
  validate(m);
  Report gr = check_subgroup(g);
  if (!gr.ok()) throw InputError("subgroup invalid: " + gr.summary());
  const Action& l = m.left_action();
  if (!(l.monoid == g.parent)) throw InputError("subgroup is not in the module's acting monoid");
  std::vector<std::vector<int>> acts;
  for (int t : g.members) {
    std::vector<int> f(m.size());
    for (int b = 0; b < m.size(); ++b) f[b] = l(t, b);
    acts.push_back(std::move(f));
  }
  if (m.right) {
    const Action& r = *m.right;
    for (int b = 0; b < m.size(); ++b) {
      std::set<int> lg, rg;
      for (int t : g.members) {
        lg.insert(l(t, b));
        rg.insert(r(t, b));
      }
      if (lg != rg) throw InputError("subgroup is not normal: bG != Gb at b = " + m.carrier[b]);
    }
  }
  return orbit_residue(m, acts);
}

namespace {

int negative_of(const TModule& m, int b) {
  for (int x = 0; x < m.size(); ++x)
    if (m.add(b, x) == m.zero) return x;
  return -1;
}

}  // namespace

ResidueConstants residue_constants(const TModule& m, const Subgroup& g, const ResidueHypermodule& r) {
  if (!m.unit) throw InputError("residue constants need a unit in the parent module");
  const int u = *m.unit;
  const int nu = negative_of(m, u);
  if (nu < 0) throw InputError("no hypernegative: parent module has no additive inverse of 1");
  const Action& l = m.left_action();
  const Action& right = m.right_action();
  std::vector<int> neg(m.size());
  for (int b = 0; b < m.size(); ++b) {
    neg[b] = negative_of(m, b);
    if (neg[b] < 0) throw InputError("no hypernegative: parent module lacks additive inverses");
  }
  ResidueConstants out;
  Checker c;
  for (int g1 : g.members)
    for (int g2 : g.members) out.e |= singleton(r.projection[m.add(l(g1, u), neg[l(g2, u)])]);
  c.axiom("e_matches_hypersum");
  Subset via_hypersum = r.hypermagma.add(r.projection[u], r.projection[nu]);
  c.expect(via_hypersum == out.e, "e_matches_hypersum", {});
  auto times_e = [&](Subset s) {
    Subset res = 0;
    std::vector<int> elems;
    for (int k : members(s))
      for (int b : r.classes[k]) elems.push_back(b);
    for (int b1 : elems)
      for (int b2 : elems)
        for (int g1 : g.members)
          for (int g2 : g.members) res |= singleton(r.projection[m.add(right(g1, b1), neg[right(g2, b2)])]);
    return res;
  };
  out.ee = times_e(out.e);
  out.e_plus_e = powerset_add(r.hypermagma, out.e, out.e);
  for (int k = 0; k < static_cast<int>(r.classes.size()); ++k) out.class_times_e.push_back(times_e(singleton(k)));
  c.axiom("ee_equals_e_plus_e");
  c.expect(out.ee == out.e_plus_e, "ee_equals_e_plus_e", {});
  out.report = c.take();
  return out;
}

InducedSurpassing induced_surpassing(const Pair& p, const SurpassingRelation& s, const Subgroup& g) {
  const TModule& m = p.module;
  ResidueHypermodule r = residue(m, g);
  const int k = static_cast<int>(r.classes.size());
  const Action& right = m.right_action();
  InducedSurpassing out{SurpassingRelation::equality(k), {}};
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      int b1 = r.classes[x].front(), b2 = r.classes[y].front();
      bool all = true;
      for (int g1 : g.members) {
        bool any = false;
        for (int g2 : g.members) any = any || s(right(g1, b1), right(g2, b2));
        all = all && any;
      }
      out.on_classes.set(x, y, all);
    }
  Checker c;
  const SurpassingRelation& cr = out.on_classes;
  auto lifted = [&](Subset a, Subset b) {
    for (int i : members(a)) {
      bool any = false;
      for (int j : members(b)) any = any || cr(i, j);
      if (!any) return false;
    }
    return true;
  };
  c.axiom("additivity");
  for (int x = 0; x < k; ++x)
    for (int x2 = 0; x2 < k; ++x2)
      if (cr(x, x2))
        for (int y = 0; y < k; ++y)
          for (int y2 = 0; y2 < k; ++y2)
            if (cr(y, y2))
              c.expect(lifted(r.hypermagma.add(x, y), r.hypermagma.add(x2, y2)), "additivity", {x, x2, y, y2});
  Hyperpair hp = build_hyperpair(r.hypermagma);
  Pair rp = hp.to_pair();
  Report sr = check_surpassing(rp, hp.induced_order(cr));
  c.report().merge(sr, "residue_pair");
  out.report = c.take();
  return out;
}

bool is_free_base(const TModule& m, const std::vector<int>& base, std::vector<std::vector<int>>* coordinates) {
  const Action& l = m.left_action();
  const FiniteMonoid& t = l.monoid;
  const int k = static_cast<int>(base.size());
  const bool omit = !t.absorbing.has_value();
  const int choices = t.size() + (omit ? 1 : 0);
  double total = 1;
  for (int i = 0; i < k; ++i) total *= choices;
  if (total > 1e7) throw CapExceeded("free base check too large", total, 1e7);
  std::vector<std::vector<int>> coords(m.size());
  std::vector<int> hits(m.size(), 0);
  std::vector<int> c(k, 0);
  for (long code = 0; code < static_cast<long>(total); ++code) {
    long x = code;
    for (int i = 0; i < k; ++i) {
      c[i] = static_cast<int>(x % choices);
      x /= choices;
    }
    int v = m.zero;
    std::vector<int> vec(k);
    for (int i = 0; i < k; ++i) {
      if (omit && c[i] == t.size()) {
        vec[i] = -1;
        continue;
      }
      vec[i] = c[i];
      v = m.add(v, l(c[i], base[i]));
    }
    if (hits[v]++ == 0) coords[v] = vec;
  }
  bool ok = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  if (ok && coordinates) *coordinates = coords;
  return ok;
}

ResidueFreeBase residue_free_base(const TModule& m, const std::vector<int>& base, const Subgroup& g) {
  if (!is_free_base(m, base)) throw InputError("base is not free");
  const Action& l = m.left_action();
  const FiniteMonoid& t = l.monoid;
  for (int g1 : g.members)
    for (int b : base) {
      bool on_ray = false;
      for (int a = 0; a < t.size(); ++a) on_ray = on_ray || l(a, b) == l(g1, b);
      if (!on_ray) throw InputError("base is not G-invariant");
    }
  ResidueHypermodule r = residue(m, g);
  ResidueFreeBase out;
  for (int b : base) out.base_classes.push_back(r.projection[b]);
  // coefficient classes: cosets aG of the acting monoid
  std::vector<int> coset_of(t.size(), -1);
  std::vector<int> reps;
  for (int a = 0; a < t.size(); ++a) {
    if (coset_of[a] >= 0) continue;
    coset_of[a] = static_cast<int>(reps.size());
    for (int g1 : g.members) coset_of[t(a, g1)] = static_cast<int>(reps.size());
    reps.push_back(a);
  }
  Checker c;
  const int k = static_cast<int>(base.size());
  const bool omit = !t.absorbing.has_value();
  const int choices = static_cast<int>(reps.size()) + (omit ? 1 : 0);
  c.axiom("coefficient_independent_of_representative");
  for (int a = 0; a < t.size(); ++a)
    for (int i = 0; i < k; ++i)
      c.expect(r.projection[l(a, base[i])] == r.projection[l(reps[coset_of[a]], base[i])],
               "coefficient_independent_of_representative", {a, i});
  long total = 1;
  for (int i = 0; i < k; ++i) total *= choices;
  std::map<Subset, long> seen;
  Subset covered = 0;
  c.axiom("unique_coordinates");
  for (long code = 0; code < total; ++code) {
    long x = code;
    Subset sum = singleton(r.hypermagma.zero.value());
    for (int i = 0; i < k; ++i) {
      int ci = static_cast<int>(x % choices);
      x /= choices;
      if (omit && ci == static_cast<int>(reps.size())) continue;
      sum = powerset_add(r.hypermagma, sum, singleton(r.projection[l(reps[ci], base[i])]));
    }
    covered |= sum;
    auto [it, fresh] = seen.emplace(sum, code);
    c.expect(fresh, "unique_coordinates", {static_cast<int>(it->second), static_cast<int>(code)});
  }
  c.axiom("spanning");
  c.expect(covered == full_set(static_cast<int>(r.classes.size())), "spanning", {});
  out.report = c.take();
  return out;
}

}  // namespace hyperalg
