#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperalg/report.hpp"

namespace hyperalg {

// Dense row-major table of element indices.
struct Table {
  int rows = 0;
  int cols = 0;
  std::vector<int> data;

  Table() = default;
  Table(int r, int c, int fill = 0) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  int& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  int operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  static Table from_rows(const std::vector<std::vector<int>>& rows);
  std::vector<std::vector<int>> to_rows() const;
  bool operator==(const Table&) const = default;
};

int label_index(const std::vector<std::string>& labels, std::string_view label, std::string_view what);

struct FiniteMonoid {
  std::vector<std::string> elements;
  Table op;
  int identity = 0;
  std::optional<int> absorbing;

  int size() const { return static_cast<int>(elements.size()); }
  int operator()(int a, int b) const { return op(a, b); }
  int index_of(std::string_view label) const { return label_index(elements, label, "monoid element"); }
  bool is_group_on_nonabsorbing() const;
  std::optional<int> inverse(int a) const;
  bool operator==(const FiniteMonoid&) const = default;
};

FiniteMonoid trivial_monoid();
FiniteMonoid boolean_monoid();
FiniteMonoid cyclic_group(int n);

void validate(const FiniteMonoid& m);
Report check_monoid(const FiniteMonoid& m);

struct Action {
  FiniteMonoid monoid;
  Table table;  // table(a, b) is a·b for a left action, b·a for a right action

  int operator()(int a, int b) const { return table(a, b); }
  bool operator==(const Action&) const = default;
};

struct TModule {
  std::vector<std::string> carrier;
  Table add;
  int zero = 0;
  std::optional<Action> left;
  std::optional<Action> right;
  std::optional<int> unit;   // distinguished 𝟙 of M
  std::optional<Table> mul;  // multiplication when M is a semiring

  int size() const { return static_cast<int>(carrier.size()); }
  int sum(int a, int b) const { return add(a, b); }
  int index_of(std::string_view label) const { return label_index(carrier, label, "carrier element"); }
  const Action& left_action() const;
  const Action& right_action() const;  // falls back to the left action
  bool operator==(const TModule&) const = default;
};

void validate(const TModule& m);
Report check_module(const TModule& m);

// Module with the right action copied from the left action.
TModule two_sided(TModule m);
// Module over the trivial monoid {1}.
TModule over_trivial(std::vector<std::string> carrier, Table add, int zero);
// Direct sum with coordinatewise addition and action; element (i, j) has index i * |b| + j.
TModule direct_sum(const TModule& a, const TModule& b);

struct Pair {
  TModule module;
  std::vector<bool> zero_set;
  std::optional<std::vector<int>> embedding;  // acting monoid element -> carrier element
  std::optional<Table> product;               // elementwise product, -1 where undefined

  int size() const { return module.size(); }
  std::vector<int> tangibles() const;
  std::optional<int> one() const;
  bool is_tangible(int b) const;
  bool operator==(const Pair&) const = default;
};

Pair classical_pair(TModule m);
void validate(const Pair& p);
Report check_pair(const Pair& p);

struct SurpassingRelation {
  int n = 0;
  std::vector<char> rel;

  bool operator()(int i, int j) const { return rel[static_cast<std::size_t>(i) * n + j] != 0; }
  void set(int i, int j, bool v = true) { rel[static_cast<std::size_t>(i) * n + j] = v; }
  static SurpassingRelation equality(int n);
  bool operator==(const SurpassingRelation&) const = default;
};

Report check_surpassing(const Pair& p, const SurpassingRelation& s);
// True when c ∈ A₀ and c ⪯ d imply d ∈ A₀.
bool zero_set_upward_closed(const Pair& p, const SurpassingRelation& s);

struct PropertyNWitness {
  int pseudo_neg_one = 0;  // carrier index of 𝟙†
  int monoid_element = 0;  // acting monoid element mapping to 𝟙†
  int e = 0;               // 𝟙 + 𝟙†
  std::vector<int> quasi_zeros;
};

struct PropertyNResult {
  std::vector<PropertyNWitness> witnesses;
  Report report;
};

PropertyNResult find_property_N(const Pair& p);
Report check_circ_distributive(const Pair& p, const PropertyNWitness& w);

struct SubmagmaResult {
  std::vector<bool> amol;
  std::vector<std::optional<int>> height;  // nullopt means ∞
  bool admissible = false;
  Report report;
};

SubmagmaResult generated_submagma(const Pair& p);

}  // namespace hyperalg
