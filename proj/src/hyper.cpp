#include "hyperalg/hyper.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <numeric>
#include <unordered_map>

namespace hyperalg {

std::vector<int> members(Subset s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

std::string subset_label(Subset s, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (int i : members(s)) {
    if (!first) out += ",";
    out += labels[i];
    first = false;
  }
  return out + "}";
}

void validate(const Hypermagma& h) {
  const int n = h.size();
  if (n == 0) throw InputError("hypermagma carrier is empty");
  if (n > kMaxCarrier) throw InputError("hypermagma carrier exceeds 64 elements");
  if (static_cast<int>(h.table.size()) != n * n) throw InputError("hypermagma table has wrong size");
  Subset all = full_set(n);
  for (Subset s : h.table)
    if (!is_subset(s, all)) throw InputError("hypermagma entry outside the carrier");
  if (h.zero && (*h.zero < 0 || *h.zero >= n)) throw InputError("hyperzero out of range");
  if (h.mul) {
    if (h.mul->rows != n || h.mul->cols != n) throw InputError("mul table shape mismatch");
    for (int v : h.mul->data)
      if (v < 0 || v >= n) throw InputError("mul entry out of range");
  }
  if (h.one && (*h.one < 0 || *h.one >= n)) throw InputError("one out of range");
}

Subset powerset_add(const Hypermagma& h, Subset s1, Subset s2) {
  if (!s1 || !s2) return 0;
  Subset out = 0;
  for (Subset a = s1; a; a &= a - 1) {
    int i = std::countr_zero(a);
    for (Subset b = s2; b; b &= b - 1) out |= h.add(i, std::countr_zero(b));
  }
  return out;
}

FiniteMonoid multiplicative_monoid(const Hypermagma& h) {
  if (!h.mul) throw InputError("hypermagma has no multiplication");
  FiniteMonoid m;
  m.elements = h.carrier;
  m.op = *h.mul;
  m.identity = h.one.value_or(h.size() > 1 ? 1 : 0);
  m.absorbing = h.zero;
  return m;
}

bool mul_is_group_on_nonzero(const Hypermagma& h) {
  if (!h.mul || !h.zero) return false;
  FiniteMonoid m = multiplicative_monoid(h);
  if (check_monoid(m).violated("associativity") || check_monoid(m).violated("identity")) return false;
  if (m.identity == *h.zero && h.size() > 1) return false;
  return m.is_group_on_nonabsorbing();
}

bool is_commutative(const Hypermagma& h) {
  for (int a = 0; a < h.size(); ++a)
    for (int b = a + 1; b < h.size(); ++b)
      if (h.add(a, b) != h.add(b, a)) return false;
  return true;
}

Report check_hypersemigroup(const Hypermagma& h) {
  validate(h);
  Checker c;
  const int n = h.size();
  c.axiom("associativity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        Subset l = powerset_add(h, h.add(a, b), singleton(d));
        Subset r = powerset_add(h, singleton(a), h.add(b, d));
        c.expect(l == r, "associativity", {a, b, d});
      }
  c.axiom("hyperzero");
  if (!h.zero) {
    c.fail("hyperzero", {}, "no hyperzero designated");
  } else {
    for (int a = 0; a < n; ++a)
      c.expect(h.add(*h.zero, a) == singleton(a) && h.add(a, *h.zero) == singleton(a), "hyperzero", {a});
  }
  c.fact("commutative", is_commutative(h));
  bool nonempty = true;
  for (Subset s : h.table) nonempty = nonempty && s != 0;
  c.fact("nonempty_sums", nonempty);
  return c.take();
}

Report check_hypergroup(const Hypermagma& h, std::vector<int>* negation) {
  Report semi = check_hypersemigroup(h);
  Checker c;
  c.report() = semi;
  const int n = h.size();
  c.axiom("unique_negative");
  if (!h.zero) return c.take();
  const int z = *h.zero;
  std::vector<int> neg(n, -1);
  for (int a = 0; a < n; ++a) {
    int found = 0;
    for (int x = 0; x < n; ++x)
      if (contains(h.add(a, x), z) && contains(h.add(x, a), z)) {
        if (found == 0) neg[a] = x;
        ++found;
      }
    c.expect(found == 1, "unique_negative", {a}, found == 0 ? "no negative" : "several negatives");
  }
  bool have_neg = std::all_of(neg.begin(), neg.end(), [](int v) { return v >= 0; });
  c.fact("uniquely_negated", !semi.violated("unique_negative") && !c.report().violated("unique_negative"));
  c.axiom("negation_antiautomorphism");
  c.axiom("negation_involution");
  c.axiom("reversibility");
  if (!have_neg || c.report().violated("unique_negative")) {
    if (negation) negation->clear();
    return c.take();
  }
  auto neg_set = [&](Subset s) {
    Subset out = 0;
    for (int i : members(s)) out |= singleton(neg[i]);
    return out;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      c.expect(neg_set(h.add(a, b)) == h.add(neg[b], neg[a]), "negation_antiautomorphism", {a, b});
  for (int a = 0; a < n; ++a) c.expect(neg[neg[a]] == a, "negation_involution", {a});
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2)
      for (int a3 = 0; a3 < n; ++a3) {
        bool lhs = contains(h.add(a1, a2), a3);
        bool rhs = contains(h.add(a3, neg[a1]), a2);
        c.expect(lhs == rhs, "reversibility", {a1, a2, a3});
      }
  if (negation) *negation = neg;
  return c.take();
}

Report check_hyperfield(const Hypermagma& h) {
  if (!h.mul) throw InputError("hyperfield suite needs a mul table");
  Report r = check_hypergroup(h);
  Checker c;
  c.report() = r;
  const int n = h.size();
  const Table& m = *h.mul;
  int one = h.one.value_or(n > 1 ? 1 : 0);
  c.axiom("mul.associativity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) c.expect(m(m(a, b), d) == m(a, m(b, d)), "mul.associativity", {a, b, d});
  c.axiom("mul.unit");
  for (int a = 0; a < n; ++a) c.expect(m(one, a) == a && m(a, one) == a, "mul.unit", {a});
  c.axiom("mul.zero");
  if (h.zero) {
    const int z = *h.zero;
    for (int a = 0; a < n; ++a) c.expect(m(z, a) == z && m(a, z) == z, "mul.zero", {a});
    c.axiom("mul.group");
    c.expect(one != z || n == 1, "mul.group", {one}, "unit equals zero");
    for (int a = 0; a < n; ++a) {
      if (a == z) continue;
      bool inv = false;
      for (int b = 0; b < n; ++b)
        if (b != z && m(a, b) == one && m(b, a) == one) inv = true;
      c.expect(inv, "mul.group", {a}, "no inverse");
      for (int b = 0; b < n; ++b)
        if (b != z) c.expect(m(a, b) != z, "mul.group", {a, b}, "zero divisor");
    }
  }
  c.axiom("mul.commutative");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) c.expect(m(a, b) == m(b, a), "mul.commutative", {a, b});
  c.axiom("distributivity");
  auto scale = [&](int a, Subset s, bool left) {
    Subset out = 0;
    for (int i : members(s)) out |= singleton(left ? m(a, i) : m(i, a));
    return out;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        bool ok = scale(a, h.add(b, d), true) == h.add(m(a, b), m(a, d)) &&
                  scale(a, h.add(b, d), false) == h.add(m(b, a), m(d, a));
        c.expect(ok, "distributivity", {a, b, d});
      }
  return c.take();
}

namespace {

std::vector<std::string> family_labels(int n) {
  std::vector<std::string> out{"0"};
  for (int i = 1; i < n; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

Hypermagma with_zero(int n) {
  Hypermagma h;
  h.carrier = family_labels(n);
  h.table.assign(static_cast<std::size_t>(n) * n, 0);
  h.zero = 0;
  for (int a = 0; a < n; ++a) {
    h.at(0, a) = singleton(a);
    h.at(a, 0) = singleton(a);
  }
  return h;
}

}  // namespace

Hypermagma raw_family(std::string_view name, int n) {
  if (n < 1 || n > kMaxCarrier) throw InputError("family size out of range");
  Hypermagma h = with_zero(n);
  const Subset all = full_set(n);
  for (int s = 1; s < n; ++s)
    for (int t = 1; t < n; ++t) {
      Subset v;
      if (name == "all_sum") {
        v = all;
      } else if (name == "empty_sum") {
        v = 0;
      } else if (name == "pair_sum") {
        v = singleton(s) | singleton(t);
      } else if (name == "mass_a") {
        v = s == t ? (singleton(0) | singleton(s)) : all;
      } else if (name == "mass_b") {
        v = s == t ? (all & ~singleton(s)) : (singleton(s) | singleton(t));
      } else if (name == "mass_c") {
        v = all & ~singleton(s) & ~singleton(t);
      } else if (name == "idem") {
        v = s == t ? singleton(s) : all;
      } else if (name == "ordered_bipotent") {
        v = s == t ? all : singleton(std::max(s, t));
      } else {
        throw InputError("unknown builtin family '" + std::string(name) + "'");
      }
      h.at(s, t) = v;
    }
  return h;
}

std::vector<std::string> builtin_hypermagma_names() {
  return {"sign", "krasner", "tropical_chain", "all_sum", "empty_sum", "pair_sum", "mass_a",
          "mass_b", "mass_c", "idem", "ordered_bipotent"};
}

Hypermagma builtin_hypermagma(std::string_view name, std::optional<int> param) {
  if (name == "sign") {
    Hypermagma h;
    h.carrier = {"0", "1", "-1"};
    h.table.assign(9, 0);
    h.zero = 0;
    for (int a = 0; a < 3; ++a) {
      h.at(0, a) = singleton(a);
      h.at(a, 0) = singleton(a);
    }
    h.at(1, 1) = singleton(1);
    h.at(2, 2) = singleton(2);
    h.at(1, 2) = h.at(2, 1) = full_set(3);
    h.mul = Table::from_rows({{0, 0, 0}, {0, 1, 2}, {0, 2, 1}});
    h.one = 1;
    return h;
  }
  if (name == "krasner") {
    Hypermagma h;
    h.carrier = {"0", "1"};
    h.table = {singleton(0), singleton(1), singleton(1), full_set(2)};
    h.zero = 0;
    h.mul = Table::from_rows({{0, 0}, {0, 1}});
    h.one = 1;
    return h;
  }
  if (name == "tropical_chain") {
    int k = param.value_or(2);
    if (k < 1 || k + 1 > kMaxCarrier) throw InputError("tropical_chain needs 1 <= k <= 63");
    Hypermagma h;
    h.carrier.push_back("-inf");
    for (int i = 1; i <= k; ++i) h.carrier.push_back(std::to_string(i));
    const int n = k + 1;
    h.table.assign(static_cast<std::size_t>(n) * n, 0);
    h.zero = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) h.at(a, b) = a == b ? full_set(a + 1) : singleton(std::max(a, b));
    return h;
  }
  const auto names = builtin_hypermagma_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw InputError("unknown builtin '" + std::string(name) + "'");
  int n = param.value_or(3);
  int lo = 2;
  if (name == "mass_b") lo = 3;
  if (name == "mass_c") lo = 4;
  if (n < lo || n > kMaxCarrier)
    throw InputError("builtin " + std::string(name) + " needs " + std::to_string(lo) + " <= |H| <= 64");
  return raw_family(name, n);
}

Hypermagma builtin_hypermagma_uri(std::string_view uri) {
  auto open = uri.find('(');
  if (open == std::string_view::npos) return builtin_hypermagma(uri);
  if (uri.back() != ')') throw InputError("malformed builtin '" + std::string(uri) + "'");
  std::string arg(uri.substr(open + 1, uri.size() - open - 2));
  int v = 0;
  try {
    std::size_t used = 0;
    v = std::stoi(arg, &used);
    if (used != arg.size()) throw InputError("bad builtin parameter");
  } catch (const std::exception&) {
    throw InputError("bad builtin parameter '" + arg + "'");
  }
  return builtin_hypermagma(uri.substr(0, open), v);
}

int Hyperpair::index(Subset s) const {
  auto it = std::lower_bound(family.begin(), family.end(), s, [](Subset a, Subset b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  if (it == family.end() || *it != s) return -1;
  return static_cast<int>(it - family.begin());
}

int Hyperpair::zero_index() const { return index(singleton(base.zero.value())); }

std::vector<std::string> Hyperpair::labels() const {
  std::vector<std::string> out;
  for (Subset s : family) out.push_back(subset_label(s, base.carrier));
  return out;
}

TModule Hyperpair::to_module() const {
  TModule m;
  m.carrier = labels();
  m.add = add;
  m.zero = zero_index();
  m.left = Action{tangible_monoid, left_action};
  m.right = Action{tangible_monoid, right_action};
  if (base.one) m.unit = index(singleton(*base.one));
  return m;
}

Pair Hyperpair::to_pair() const {
  Pair p;
  p.module = to_module();
  p.zero_set = zero_family;
  std::vector<int> emb;
  for (int t = 0; t < tangible_monoid.size(); ++t) emb.push_back(index(singleton(tangible_of[t])));
  p.embedding = emb;
  if (base.mul) {
    Table prod(size(), size(), -1);
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        Subset out = 0;
        for (int a : members(family[i]))
          for (int b : members(family[j])) out |= singleton((*base.mul)(a, b));
        prod(i, j) = index(out);
      }
    p.product = prod;
  }
  return p;
}

SurpassingRelation Hyperpair::subset_order() const {
  SurpassingRelation s = SurpassingRelation::equality(size());
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) s.set(i, j, is_subset(family[i], family[j]));
  return s;
}

SurpassingRelation Hyperpair::induced_order(const SurpassingRelation& on) const {
  SurpassingRelation s = SurpassingRelation::equality(size());
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) {
      bool ok = true;
      for (int a : members(family[i])) {
        bool any = false;
        for (int b : members(family[j])) any = any || on(a, b);
        ok = ok && any;
      }
      s.set(i, j, ok);
    }
  return s;
}

Hyperpair build_hyperpair(const Hypermagma& h, const HyperpairOptions& options) {
  validate(h);
  if (!h.zero) throw InputError("hyperpair needs a hyperzero");
  const int n = h.size();
  const int z = *h.zero;
  Hyperpair hp;
  hp.base = h;
  Checker c;
  if (!options.force_trivial_tangibles && mul_is_group_on_nonzero(h)) {
    hp.tangible_monoid = multiplicative_monoid(h);
    for (int t = 0; t < n; ++t) hp.tangible_of.push_back(t);
  } else {
    int one = h.one.value_or(n > 1 ? (z == 0 ? 1 : 0) : z);
    hp.tangible_monoid = boolean_monoid();
    hp.tangible_of = {z, one};
  }
  const FiniteMonoid& tm = hp.tangible_monoid;
  auto act = [&](int t, Subset s, bool left) -> Subset {
    int x = hp.tangible_of[t];
    if (tm.absorbing && t == *tm.absorbing) return s ? singleton(z) : 0;
    if (!h.mul) return s;
    Subset out = 0;
    for (int i : members(s)) out |= singleton(left ? (*h.mul)(x, i) : (*h.mul)(i, x));
    return out;
  };
  std::vector<Subset> fam;
  std::unordered_map<Subset, int> seen;
  auto push = [&](Subset s) {
    if (seen.count(s)) return;
    if (fam.size() >= options.family_limit) throw ResourceError("hyperpair family exceeds limit", options.family_limit);
    seen.emplace(s, static_cast<int>(fam.size()));
    fam.push_back(s);
  };
  for (int i = 0; i < n; ++i) push(singleton(i));
  for (std::size_t done = 0; done < fam.size(); ++done) {
    for (std::size_t j = 0; j <= done; ++j) {
      push(powerset_add(h, fam[done], fam[j]));
      push(powerset_add(h, fam[j], fam[done]));
    }
    for (int t = 0; t < tm.size(); ++t) {
      push(act(t, fam[done], true));
      push(act(t, fam[done], false));
    }
  }
  std::sort(fam.begin(), fam.end(), [](Subset a, Subset b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  hp.family = fam;
  const int f = hp.size();
  Subset s0 = options.s0 ? options.s0 : singleton(z);
  hp.zero_family.resize(f);
  for (int i = 0; i < f; ++i) hp.zero_family[i] = (fam[i] & s0) != 0;
  hp.add = Table(f, f);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) hp.add(i, j) = hp.index(powerset_add(h, fam[i], fam[j]));
  hp.left_action = Table(tm.size(), f);
  hp.right_action = Table(tm.size(), f);
  for (int t = 0; t < tm.size(); ++t)
    for (int i = 0; i < f; ++i) {
      hp.left_action(t, i) = hp.index(act(t, fam[i], true));
      hp.right_action(t, i) = hp.index(act(t, fam[i], false));
    }
  bool mul_closed = true;
  if (h.mul) {
    for (int i = 0; i < f && mul_closed; ++i)
      for (int j = 0; j < f; ++j) {
        Subset out = 0;
        for (int a : members(fam[i]))
          for (int b : members(fam[j])) out |= singleton((*h.mul)(a, b));
        if (hp.index(out) < 0) {
          mul_closed = false;
          c.note("elementwise product " + subset_label(fam[i], h.carrier) + "*" + subset_label(fam[j], h.carrier) +
                 " leaves the family");
          break;
        }
      }
    c.fact("multiplicatively_closed", mul_closed);
  }
  c.fact("contains_empty", hp.index(0) >= 0);
  hp.closure_report = c.take();
  return hp;
}

std::vector<Subset> weakly_neutral_family(const Hypermagma& h, Report* report) {
  validate(h);
  const int n = h.size();
  if (n > 20) throw ResourceError("weakly neutral family enumeration limited to 20 elements", 20);
  std::vector<Subset> out;
  for (Subset s = 1; s <= full_set(n); ++s) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = contains(powerset_add(h, singleton(a), s), a);
    if (ok) out.push_back(s);
  }
  if (report) {
    Checker c;
    c.axiom("closed_under_hyperaddition");
    std::vector<bool> in(static_cast<std::size_t>(full_set(n)) + 1, false);
    for (Subset s : out) in[s] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j) {
        Subset t = powerset_add(h, out[i], out[j]);
        c.expect(t != 0 && in[t], "closed_under_hyperaddition", {static_cast<int>(i), static_cast<int>(j)});
      }
    *report = c.take();
  }
  return out;
}

Suite parse_suite(std::string_view name) {
  if (name == "hypersemigroup") return Suite::hypersemigroup;
  if (name == "hypergroup") return Suite::hypergroup;
  throw InputError("census suite must be hypersemigroup or hypergroup");
}

std::string_view to_string(Suite s) { return s == Suite::hypersemigroup ? "hypersemigroup" : "hypergroup"; }

namespace {

bool fast_associative(const Hypermagma& h) {
  const int n = h.size();
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) {
      Subset ab = h.add(a, b);
      for (int d = 1; d < n; ++d)
        if (powerset_add(h, ab, singleton(d)) != powerset_add(h, singleton(a), h.add(b, d))) return false;
    }
  return true;
}

Hypermagma permuted(const Hypermagma& h, const std::vector<int>& p) {
  Hypermagma out = h;
  const int n = h.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Subset s = 0;
      for (int i : members(h.add(a, b))) s |= singleton(p[i]);
      out.at(p[a], p[b]) = s;
    }
  return out;
}

bool passes(const Hypermagma& h, Suite suite) {
  if (!fast_associative(h)) return false;
  return suite == Suite::hypersemigroup ? check_hypersemigroup(h).ok() : check_hypergroup(h).ok();
}

Hypermagma census_table(int n, const std::vector<Subset>& entries) {
  Hypermagma h;
  h.carrier.clear();
  for (int i = 0; i < n; ++i) h.carrier.push_back(std::to_string(i));
  h.table.assign(static_cast<std::size_t>(n) * n, 0);
  h.zero = 0;
  for (int a = 0; a < n; ++a) h.at(0, a) = h.at(a, 0) = singleton(a);
  std::size_t k = 0;
  for (int a = 1; a < n; ++a)
    for (int b = a; b < n; ++b) {
      h.at(a, b) = h.at(b, a) = entries[k++];
    }
  return h;
}

}  // namespace

Hypermagma canonical_form(const Hypermagma& h) {
  const int n = h.size();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Hypermagma best = h;
  do {
    Hypermagma q = permuted(h, p);
    if (q.table < best.table) best = q;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return best;
}

double census_candidates(int order) { return std::pow(std::pow(2.0, order), order * (order - 1) / 2.0); }

CensusResult census(int order, Suite suite, int workers) {
  if (order < 1 || order > 4) throw CapExceeded("census order must be between 1 and 4", order, 4);
  const int n = order;
  const int free = (n - 1) * n / 2;
  const Subset choices = Subset{1} << n;
  std::size_t total = 1;
  for (int i = 0; i < free; ++i) total *= choices;
  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin() + 1, p.end()));
  }
  auto run = [&](std::size_t lo, std::size_t hi) {
    CensusResult part;
    std::vector<Subset> entries(free);
    for (std::size_t code = lo; code < hi; ++code) {
      std::size_t x = code;
      for (int i = free - 1; i >= 0; --i) {
        entries[i] = x % choices;
        x /= choices;
      }
      Hypermagma h = census_table(n, entries);
      ++part.enumerated;
      bool canonical = true;
      for (std::size_t k = 1; k < perms.size() && canonical; ++k)
        if (permuted(h, perms[k]).table < h.table) canonical = false;
      if (!canonical) continue;
      if (!passes(h, suite)) continue;
      ++part.passing_before_dedup;
      part.tables.push_back(std::move(h));
    }
    return part;
  };
  workers = std::max(1, workers);
  std::vector<std::future<CensusResult>> jobs;
  std::size_t chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = std::min(total, chunk * w), hi = std::min(total, chunk * (w + 1));
    jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, run, lo, hi));
  }
  CensusResult out;
  for (auto& j : jobs) {
    CensusResult part = j.get();
    out.enumerated += part.enumerated;
    out.passing_before_dedup += part.passing_before_dedup;
    for (auto& t : part.tables) out.tables.push_back(std::move(t));
  }
  return out;
}

}  // namespace hyperalg
