#pragma once

// Brute-force reference implementations, written against the raw tables only.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "hyperalg/core.hpp"
#include "hyperalg/hyper.hpp"

namespace oracle {

using Set = std::set<int>;
using hyperalg::Hypermagma;

inline Set entry(const Hypermagma& h, int a, int b) {
  Set s;
  for (int x = 0; x < h.size(); ++x)
    if ((h.table[a * h.size() + b] >> x) & 1U) s.insert(x);
  return s;
}

inline Set sum(const Hypermagma& h, const Set& x, const Set& y) {
  Set out;
  for (int a : x)
    for (int b : y) {
      Set e = entry(h, a, b);
      out.insert(e.begin(), e.end());
    }
  return out;
}

inline bool associative(const Hypermagma& h) {
  for (int a = 0; a < h.size(); ++a)
    for (int b = 0; b < h.size(); ++b)
      for (int c = 0; c < h.size(); ++c)
        if (sum(h, sum(h, {a}, {b}), {c}) != sum(h, {a}, sum(h, {b}, {c}))) return false;
  return true;
}

inline bool has_zero(const Hypermagma& h, int z) {
  for (int a = 0; a < h.size(); ++a)
    if (entry(h, z, a) != Set{a} || entry(h, a, z) != Set{a}) return false;
  return true;
}

inline std::vector<int> negatives(const Hypermagma& h, int z, int a) {
  std::vector<int> out;
  for (int x = 0; x < h.size(); ++x)
    if (entry(h, a, x).count(z) && entry(h, x, a).count(z)) out.push_back(x);
  return out;
}

inline bool uniquely_negated(const Hypermagma& h) {
  if (!h.zero) return false;
  for (int a = 0; a < h.size(); ++a)
    if (negatives(h, *h.zero, a).size() != 1) return false;
  return true;
}

// Associative, hyperzero, unique negatives, −(a+b) = −b + −a, −−a = a, and a₃ ∈ a₁+a₂ ⇔ a₂ ∈ a₃+(−a₁).
inline bool hypergroup(const Hypermagma& h) {
  if (!h.zero || !associative(h) || !has_zero(h, *h.zero) || !uniquely_negated(h)) return false;
  const int n = h.size();
  std::vector<int> neg(n);
  for (int a = 0; a < n; ++a) neg[a] = negatives(h, *h.zero, a).front();
  for (int a = 0; a < n; ++a) {
    if (neg[neg[a]] != a) return false;
    for (int b = 0; b < n; ++b) {
      Set minus;
      for (int x : entry(h, a, b)) minus.insert(neg[x]);
      if (minus != entry(h, neg[b], neg[a])) return false;
      for (int c = 0; c < n; ++c)
        if (entry(h, a, b).count(c) != entry(h, c, neg[a]).count(b)) return false;
    }
  }
  return true;
}

// Smallest family of subsets containing the singletons of `seed` and closed under ⊞.
inline std::set<Set> closure(const Hypermagma& h, const std::vector<Set>& seed) {
  std::set<Set> fam(seed.begin(), seed.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Set> cur(fam.begin(), fam.end());
    for (const auto& x : cur)
      for (const auto& y : cur) grew |= fam.insert(sum(h, x, y)).second;
  }
  return fam;
}

inline bool monoid_associative(const hyperalg::Table& op) {
  for (int a = 0; a < op.rows; ++a)
    for (int b = 0; b < op.rows; ++b)
      for (int c = 0; c < op.rows; ++c)
        if (op(op(a, b), c) != op(a, op(b, c))) return false;
  return true;
}

// Every map f: [0, n) → [0, m), in lexicographic order.
inline void for_each_map(int n, int m, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> f(n, 0);
  for (;;) {
    visit(f);
    int i = n - 1;
    while (i >= 0 && ++f[i] == m) f[i--] = 0;
    if (i < 0) return;
  }
}

// Number of balanced maps ψ: M₁ × M₂ → N (additive in each variable and slide-compatible).
inline std::size_t balanced_maps(const hyperalg::TModule& m1, const hyperalg::TModule& m2,
                                 const hyperalg::FiniteMonoid& over, const hyperalg::TModule& n,
                                 const std::vector<int>& right1, const std::vector<int>& left2) {
  const int a = m1.size(), b = m2.size();
  std::size_t count = 0;
  for_each_map(a * b, n.size(), [&](const std::vector<int>& psi) {
    auto at = [&](int x, int y) { return psi[x * b + y]; };
    for (int x = 0; x < a; ++x)
      for (int y = 0; y < b; ++y) {
        for (int x2 = 0; x2 < a; ++x2)
          if (at(m1.add(x, x2), y) != n.add(at(x, y), at(x2, y))) return;
        for (int y2 = 0; y2 < b; ++y2)
          if (at(x, m2.add(y, y2)) != n.add(at(x, y), at(x, y2))) return;
        for (int t = 0; t < over.size(); ++t) {
          int xa = m1.right_action()(right1[t], x);
          int ay = m2.left_action()(left2[t], y);
          if (at(xa, y) != at(x, ay)) return;
        }
      }
    ++count;
  });
  return count;
}

}  // namespace oracle
