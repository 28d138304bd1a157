#include "hyperalg/core.hpp"

#include <algorithm>
#include <set>

namespace hyperalg {

Table Table::from_rows(const std::vector<std::vector<int>>& rows) {
  Table t(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < t.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != t.cols) throw InputError("ragged table row " + std::to_string(i));
    for (int j = 0; j < t.cols; ++j) t(i, j) = rows[i][j];
  }
  return t;
}

std::vector<std::vector<int>> Table::to_rows() const {
  std::vector<std::vector<int>> out(rows, std::vector<int>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out[i][j] = (*this)(i, j);
  return out;
}

int label_index(const std::vector<std::string>& labels, std::string_view label, std::string_view what) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw InputError("unknown " + std::string(what) + " '" + std::string(label) + "'");
}

namespace {

void check_table(const Table& t, int rows, int cols, int range, std::string_view what) {
  if (t.rows != rows || t.cols != cols)
    throw InputError(std::string(what) + " has shape " + std::to_string(t.rows) + "x" + std::to_string(t.cols) +
                     ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  for (int v : t.data)
    if (v < 0 || v >= range) throw InputError(std::string(what) + " entry " + std::to_string(v) + " is not an index");
}

void check_labels(const std::vector<std::string>& labels, std::string_view what) {
  if (labels.empty()) throw InputError(std::string(what) + " is empty");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw InputError(std::string(what) + " has duplicate labels");
}

}  // namespace

bool FiniteMonoid::is_group_on_nonabsorbing() const {
  for (int a = 0; a < size(); ++a) {
    if (absorbing && a == *absorbing) continue;
    if (!inverse(a)) return false;
    for (int b = 0; b < size(); ++b) {
      if (absorbing && b == *absorbing) continue;
      if (absorbing && op(a, b) == *absorbing) return false;
    }
  }
  return true;
}

std::optional<int> FiniteMonoid::inverse(int a) const {
  for (int b = 0; b < size(); ++b)
    if (op(a, b) == identity && op(b, a) == identity) return b;
  return std::nullopt;
}

FiniteMonoid trivial_monoid() { return {{"1"}, Table(1, 1, 0), 0, std::nullopt}; }

FiniteMonoid boolean_monoid() {
  return {{"0", "1"}, Table::from_rows({{0, 0}, {0, 1}}), 1, 0};
}

FiniteMonoid cyclic_group(int n) {
  FiniteMonoid m;
  for (int i = 0; i < n; ++i) m.elements.push_back("g" + std::to_string(i));
  m.op = Table(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.op(i, j) = (i + j) % n;
  m.identity = 0;
  return m;
}

void validate(const FiniteMonoid& m) {
  check_labels(m.elements, "monoid elements");
  check_table(m.op, m.size(), m.size(), m.size(), "monoid op");
  if (m.identity < 0 || m.identity >= m.size()) throw InputError("monoid identity out of range");
  if (m.absorbing && (*m.absorbing < 0 || *m.absorbing >= m.size()))
    throw InputError("monoid absorbing element out of range");
}

Report check_monoid(const FiniteMonoid& m) {
  validate(m);
  Checker c;
  const int n = m.size();
  c.axiom("associativity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) c.expect(m(m(a, b), d) == m(a, m(b, d)), "associativity", {a, b, d});
  c.axiom("identity");
  for (int a = 0; a < n; ++a)
    c.expect(m(m.identity, a) == a && m(a, m.identity) == a, "identity", {a});
  if (m.absorbing) {
    c.axiom("absorbing");
    for (int a = 0; a < n; ++a)
      c.expect(m(*m.absorbing, a) == *m.absorbing && m(a, *m.absorbing) == *m.absorbing, "absorbing", {a});
  }
  bool comm = true;
  for (int a = 0; a < n && comm; ++a)
    for (int b = 0; b < n; ++b)
      if (m(a, b) != m(b, a)) comm = false;
  c.fact("commutative", comm);
  return c.take();
}

const Action& TModule::left_action() const {
  if (!left) throw InputError("module has no left action");
  return *left;
}

const Action& TModule::right_action() const {
  if (right) return *right;
  return left_action();
}

void validate(const TModule& m) {
  check_labels(m.carrier, "module carrier");
  const int n = m.size();
  check_table(m.add, n, n, n, "module add");
  if (m.zero < 0 || m.zero >= n) throw InputError("module zero out of range");
  for (const auto* act : {&m.left, &m.right}) {
    if (!*act) continue;
    validate((*act)->monoid);
    check_table((*act)->table, (*act)->monoid.size(), n, n, "action table");
  }
  if (m.unit && (*m.unit < 0 || *m.unit >= n)) throw InputError("module unit out of range");
  if (m.mul) check_table(*m.mul, n, n, n, "module mul");
}

namespace {

void check_action(Checker& c, const TModule& m, const Action& act, bool is_left, const std::string& tag) {
  const int n = m.size();
  const FiniteMonoid& t = act.monoid;
  const int k = t.size();
  c.axiom(tag + ".identity");
  for (int b = 0; b < n; ++b) c.expect(act(t.identity, b) == b, tag + ".identity", {b});
  c.axiom(tag + ".compatibility");
  for (int a1 = 0; a1 < k; ++a1)
    for (int a2 = 0; a2 < k; ++a2)
      for (int b = 0; b < n; ++b) {
        // left: a1(a2 b) = (a1 a2) b; right: (b a1) a2 = b (a1 a2)
        int lhs = is_left ? act(a1, act(a2, b)) : act(a2, act(a1, b));
        c.expect(lhs == act(t(a1, a2), b), tag + ".compatibility", {a1, a2, b});
      }
  c.axiom(tag + ".zero");
  for (int a = 0; a < k; ++a) c.expect(act(a, m.zero) == m.zero, tag + ".zero", {a});
  c.axiom(tag + ".distributivity");
  for (int a = 0; a < k; ++a)
    for (int b1 = 0; b1 < n; ++b1)
      for (int b2 = 0; b2 < n; ++b2)
        c.expect(act(a, m.add(b1, b2)) == m.add(act(a, b1), act(a, b2)), tag + ".distributivity", {a, b1, b2});
  if (t.absorbing) {
    bool ok = true;
    for (int b = 0; b < n; ++b) ok = ok && act(*t.absorbing, b) == m.zero;
    c.fact(tag + ".absorbing_acts_as_zero", ok);
  }
}

}  // namespace

Report check_module(const TModule& m) {
  validate(m);
  Checker c;
  const int n = m.size();
  c.axiom("add.commutativity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) c.expect(m.add(a, b) == m.add(b, a), "add.commutativity", {a, b});
  c.axiom("add.associativity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        c.expect(m.add(m.add(a, b), d) == m.add(a, m.add(b, d)), "add.associativity", {a, b, d});
  c.axiom("add.zero");
  for (int a = 0; a < n; ++a) c.expect(m.add(m.zero, a) == a && m.add(a, m.zero) == a, "add.zero", {a});
  if (m.left) check_action(c, m, *m.left, true, "left");
  if (m.right) check_action(c, m, *m.right, false, "right");
  if (m.left && m.right) {
    c.axiom("bimodule");
    const Action& l = *m.left;
    const Action& r = *m.right;
    for (int a1 = 0; a1 < l.monoid.size(); ++a1)
      for (int a2 = 0; a2 < r.monoid.size(); ++a2)
        for (int b = 0; b < n; ++b) c.expect(r(a2, l(a1, b)) == l(a1, r(a2, b)), "bimodule", {a1, a2, b});
  }
  if (m.mul) {
    const Table& x = *m.mul;
    c.axiom("mul.associativity");
    c.axiom("mul.distributivity");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
          c.expect(x(x(a, b), d) == x(a, x(b, d)), "mul.associativity", {a, b, d});
          c.expect(x(a, m.add(b, d)) == m.add(x(a, b), x(a, d)) && x(m.add(b, d), a) == m.add(x(b, a), x(d, a)),
                   "mul.distributivity", {a, b, d});
        }
    c.axiom("mul.zero");
    for (int a = 0; a < n; ++a) c.expect(x(m.zero, a) == m.zero && x(a, m.zero) == m.zero, "mul.zero", {a});
    if (m.unit) {
      c.axiom("mul.unit");
      for (int a = 0; a < n; ++a) c.expect(x(*m.unit, a) == a && x(a, *m.unit) == a, "mul.unit", {a});
    }
  }
  return c.take();
}

TModule two_sided(TModule m) {
  m.right = m.left;
  return m;
}

TModule over_trivial(std::vector<std::string> carrier, Table add, int zero) {
  TModule m;
  const int n = static_cast<int>(carrier.size());
  m.carrier = std::move(carrier);
  m.add = std::move(add);
  m.zero = zero;
  Table act(1, n);
  for (int b = 0; b < n; ++b) act(0, b) = b;
  m.left = Action{trivial_monoid(), act};
  m.right = m.left;
  return m;
}

TModule direct_sum(const TModule& a, const TModule& b) {
  TModule s;
  const int na = a.size(), nb = b.size();
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) s.carrier.push_back("(" + a.carrier[i] + "," + b.carrier[j] + ")");
  s.add = Table(na * nb, na * nb);
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y) s.add(x, y) = a.add(x / nb, y / nb) * nb + b.add(x % nb, y % nb);
  s.zero = a.zero * nb + b.zero;
  auto lift = [&](const std::optional<Action>& p, const std::optional<Action>& q) -> std::optional<Action> {
    if (!p || !q) return std::nullopt;
    if (!(p->monoid == q->monoid)) throw InputError("direct sum needs a common acting monoid");
    Action act{p->monoid, Table(p->monoid.size(), na * nb)};
    for (int t = 0; t < p->monoid.size(); ++t)
      for (int x = 0; x < na * nb; ++x) act.table(t, x) = (*p)(t, x / nb) * nb + (*q)(t, x % nb);
    return act;
  };
  s.left = lift(a.left, b.left);
  s.right = lift(a.right, b.right);
  return s;
}

std::vector<int> Pair::tangibles() const {
  std::vector<int> out;
  if (!embedding || !module.left) return out;
  const FiniteMonoid& t = module.left->monoid;
  for (int a = 0; a < t.size(); ++a) {
    if (t.absorbing && a == *t.absorbing) continue;
    out.push_back((*embedding)[a]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> Pair::one() const {
  if (!embedding || !module.left) return std::nullopt;
  return (*embedding)[module.left->monoid.identity];
}

bool Pair::is_tangible(int b) const {
  auto t = tangibles();
  return std::binary_search(t.begin(), t.end(), b);
}

Pair classical_pair(TModule m) {
  Pair p;
  p.zero_set.assign(m.size(), false);
  p.zero_set[m.zero] = true;
  p.module = std::move(m);
  return p;
}

void validate(const Pair& p) {
  validate(p.module);
  if (static_cast<int>(p.zero_set.size()) != p.size()) throw InputError("zero_set is not a subset of the carrier");
  if (p.embedding) {
    const Action& l = p.module.left_action();
    if (static_cast<int>(p.embedding->size()) != l.monoid.size()) throw InputError("embedding size mismatch");
    for (int v : *p.embedding)
      if (v < 0 || v >= p.size()) throw InputError("embedding entry out of range");
  }
  if (p.product) {
    if (p.product->rows != p.size() || p.product->cols != p.size()) throw InputError("product shape mismatch");
    for (int v : p.product->data)
      if (v < -1 || v >= p.size()) throw InputError("product entry out of range");
  }
}

Report check_pair(const Pair& p) {
  validate(p);
  Checker c;
  const TModule& m = p.module;
  const int n = p.size();
  c.axiom("zero_set.add");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.zero_set[a] && p.zero_set[b]) c.expect(p.zero_set[m.add(a, b)], "zero_set.add", {a, b});
  auto action_closed = [&](const std::optional<Action>& act, const std::string& tag) {
    if (!act) return;
    c.axiom(tag);
    for (int t = 0; t < act->monoid.size(); ++t)
      for (int b = 0; b < n; ++b)
        if (p.zero_set[b]) c.expect(p.zero_set[(*act)(t, b)], tag, {t, b});
  };
  action_closed(m.left, "zero_set.left_action");
  action_closed(m.right, "zero_set.right_action");
  if (p.embedding) {
    const Action& l = *m.left;
    const FiniteMonoid& t = l.monoid;
    c.axiom("embedding.equivariant");
    for (int a = 0; a < t.size(); ++a)
      for (int b = 0; b < t.size(); ++b)
        c.expect(l(a, (*p.embedding)[b]) == (*p.embedding)[t(a, b)], "embedding.equivariant", {a, b});
    if (t.absorbing) {
      c.axiom("embedding.absorbing");
      c.expect((*p.embedding)[*t.absorbing] == m.zero, "embedding.absorbing", {*t.absorbing});
    }
    auto tang = p.tangibles();
    bool proper = true;
    for (int x : tang) proper = proper && !p.zero_set[x];
    int nonabs = t.size() - (t.absorbing ? 1 : 0);
    c.fact("proper", proper);
    c.fact("weakly_admissible", static_cast<int>(tang.size()) == nonabs);
  } else {
    c.fact("weakly_admissible", false);
  }
  c.fact("zero_in_zero_set", p.zero_set[m.zero]);
  return c.take();
}

SurpassingRelation SurpassingRelation::equality(int n) {
  SurpassingRelation s{n, std::vector<char>(static_cast<std::size_t>(n) * n, 0)};
  for (int i = 0; i < n; ++i) s.set(i, i);
  return s;
}

Report check_surpassing(const Pair& p, const SurpassingRelation& s) {
  validate(p);
  const int n = p.size();
  if (s.n != n || static_cast<int>(s.rel.size()) != n * n) throw InputError("surpassing matrix shape mismatch");
  const TModule& m = p.module;
  Checker c;
  c.axiom("reflexive");
  for (int a = 0; a < n; ++a) c.expect(s(a, a), "reflexive", {a});
  c.axiom("transitive");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (s(a, b))
        for (int d = 0; d < n; ++d)
          if (s(b, d)) c.expect(s(a, d), "transitive", {a, b, d});
  auto monotone = [&](const std::optional<Action>& act, const std::string& tag) {
    if (!act) return;
    c.axiom(tag);
    for (int t = 0; t < act->monoid.size(); ++t)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (s(a, b)) c.expect(s((*act)(t, a), (*act)(t, b)), tag, {t, a, b});
  };
  monotone(m.left, "left_action_monotone");
  monotone(m.right, "right_action_monotone");
  c.axiom("sum_monotone");
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      if (s(a, a2))
        for (int b = 0; b < n; ++b)
          for (int b2 = 0; b2 < n; ++b2)
            if (s(b, b2)) c.expect(s(m.add(a, b), m.add(a2, b2)), "sum_monotone", {a, a2, b, b2});
  c.axiom("tangible_rigidity");
  auto tang = p.tangibles();
  for (int a : tang)
    for (int b : tang)
      if (a != b) c.expect(!s(a, b), "tangible_rigidity", {a, b});
  c.axiom("below_zero");
  for (int b = 0; b < n; ++b)
    if (b != m.zero) c.expect(!s(b, m.zero), "below_zero", {b});
  c.axiom("zero_below_zero_set");
  for (int b = 0; b < n; ++b)
    if (p.zero_set[b]) c.expect(s(m.zero, b), "zero_below_zero_set", {b});
  bool lemma = true;
  std::vector<int> lemma_witness;
  for (int b = 0; b < n && lemma; ++b)
    for (int d = 0; d < n; ++d)
      if (p.zero_set[d] && !s(b, m.add(b, d))) {
        lemma = false;
        lemma_witness = {b, d};
        break;
      }
  c.fact("derived.b_below_b_plus_zero", lemma);
  if (!lemma)
    c.note("b <= b+c fails at b=" + std::to_string(lemma_witness[0]) + ", c=" + std::to_string(lemma_witness[1]));
  c.fact("zero_set_upward_closed", zero_set_upward_closed(p, s));
  return c.take();
}

bool zero_set_upward_closed(const Pair& p, const SurpassingRelation& s) {
  for (int a = 0; a < p.size(); ++a)
    if (p.zero_set[a])
      for (int b = 0; b < p.size(); ++b)
        if (s(a, b) && !p.zero_set[b]) return false;
  return true;
}

PropertyNResult find_property_N(const Pair& p) {
  validate(p);
  PropertyNResult out;
  Checker c;
  auto one = p.one();
  if (!one) throw InputError("property N needs a tangible embedding");
  const TModule& m = p.module;
  const Action& act = m.right_action();
  const FiniteMonoid& t = m.left_action().monoid;
  std::vector<int> tang_elems;
  for (int a = 0; a < t.size(); ++a)
    if (!(t.absorbing && a == *t.absorbing)) tang_elems.push_back(a);
  c.axiom("quasi_zeros_in_zero_set");
  std::set<int> seen;
  for (int dag : tang_elems) {
    int d = (*p.embedding)[dag];
    if (seen.count(d)) continue;
    int e = m.add(*one, d);
    if (!p.zero_set[e]) continue;
    seen.insert(d);
    PropertyNWitness w;
    w.pseudo_neg_one = d;
    w.monoid_element = dag;
    w.e = e;
    std::set<int> qz;
    for (int a : tang_elems) {
      int x = (*p.embedding)[a];
      int q = m.add(x, act(dag, x));
      qz.insert(q);
      c.expect(p.zero_set[q], "quasi_zeros_in_zero_set", {dag, a});
    }
    w.quasi_zeros.assign(qz.begin(), qz.end());
    out.witnesses.push_back(std::move(w));
  }
  c.fact("property_N", !out.witnesses.empty());
  if (out.witnesses.size() > 1) c.note("pseudo-negative is not unique; callers must fix one");
  out.report = c.take();
  return out;
}

Report check_circ_distributive(const Pair& p, const PropertyNWitness& w) {
  validate(p);
  const TModule& m = p.module;
  const int n = p.size();
  const Action& act = m.right_action();
  Checker c;
  std::vector<int> times_e(n, -1);
  for (int b = 0; b < n; ++b) {
    if (p.product)
      times_e[b] = (*p.product)(b, w.e);
    else
      times_e[b] = m.add(b, act(w.monoid_element, b));
  }
  c.axiom("product_defined");
  for (int b = 0; b < n; ++b) c.expect(times_e[b] >= 0, "product_defined", {b, w.e});
  c.axiom("circ_distributive");
  for (int b1 = 0; b1 < n; ++b1)
    for (int b2 = 0; b2 < n; ++b2) {
      int lhs = times_e[m.add(b1, b2)];
      int x = times_e[b1], y = times_e[b2];
      if (lhs < 0 || x < 0 || y < 0) continue;
      c.expect(lhs == m.add(x, y), "circ_distributive", {b1, b2});
    }
  bool idem = true;
  for (int b = 0; b < n; ++b)
    if (p.zero_set[b] && m.add(b, b) != b) idem = false;
  c.fact("zero_set_idempotent", idem);
  return c.take();
}

SubmagmaResult generated_submagma(const Pair& p) {
  validate(p);
  const TModule& m = p.module;
  const int n = p.size();
  SubmagmaResult r;
  r.height.assign(n, std::nullopt);
  r.height[m.zero] = 0;
  for (int x : p.tangibles())
    if (x != m.zero) r.height[x] = 1;
  for (int level = 2;; ++level) {
    std::vector<int> fresh;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!r.height[a] || !r.height[b]) continue;
        if (std::max(*r.height[a], *r.height[b]) != level - 1) continue;
        int s = m.add(a, b);
        if (!r.height[s]) fresh.push_back(s);
      }
    if (fresh.empty()) break;
    for (int s : fresh) r.height[s] = level;
  }
  r.amol.assign(n, false);
  bool all = true;
  for (int b = 0; b < n; ++b) {
    r.amol[b] = r.height[b].has_value();
    all = all && r.amol[b];
  }
  r.admissible = all;
  Checker c;
  auto stable = [&](const std::optional<Action>& act, const std::string& tag) {
    if (!act) return;
    c.axiom(tag);
    for (int t = 0; t < act->monoid.size(); ++t)
      for (int b = 0; b < n; ++b)
        if (r.amol[b]) c.expect(r.amol[(*act)(t, b)], tag, {t, b});
  };
  stable(m.left, "amol.left_action_closed");
  stable(m.right, "amol.right_action_closed");
  c.axiom("amol.add_closed");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (r.amol[a] && r.amol[b]) c.expect(r.amol[m.add(a, b)], "amol.add_closed", {a, b});
  c.fact("admissible", r.admissible);
  r.report = c.take();
  return r;
}

}  // namespace hyperalg
