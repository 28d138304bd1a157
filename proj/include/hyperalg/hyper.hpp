#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperalg/core.hpp"

namespace hyperalg {

// Subset of a carrier with at most 64 elements, bit i set iff element i is present.
using Subset = std::uint64_t;

inline constexpr int kMaxCarrier = 64;

inline Subset singleton(int i) { return Subset{1} << i; }
inline bool contains(Subset s, int i) { return (s >> i) & 1U; }
inline bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }
inline Subset full_set(int n) { return n >= 64 ? ~Subset{0} : (Subset{1} << n) - 1; }
std::vector<int> members(Subset s);
std::string subset_label(Subset s, const std::vector<std::string>& labels);

struct Hypermagma {
  std::vector<std::string> carrier;
  std::vector<Subset> table;  // n*n, row-major
  std::optional<int> zero;
  std::optional<Table> mul;
  std::optional<int> one;

  int size() const { return static_cast<int>(carrier.size()); }
  Subset add(int a, int b) const { return table[static_cast<std::size_t>(a) * size() + b]; }
  Subset& at(int a, int b) { return table[static_cast<std::size_t>(a) * size() + b]; }
  int index_of(std::string_view label) const { return label_index(carrier, label, "carrier element"); }
  bool operator==(const Hypermagma&) const = default;
};

void validate(const Hypermagma& h);
Subset powerset_add(const Hypermagma& h, Subset s1, Subset s2);
// Multiplicative monoid of h when mul is present; 𝟘 is marked absorbing.
FiniteMonoid multiplicative_monoid(const Hypermagma& h);
bool mul_is_group_on_nonzero(const Hypermagma& h);

Report check_hypersemigroup(const Hypermagma& h);
// On success negation (if given) receives the negation table.
Report check_hypergroup(const Hypermagma& h, std::vector<int>* negation = nullptr);
Report check_hyperfield(const Hypermagma& h);
bool is_commutative(const Hypermagma& h);

// Builtin fixtures. `name` is e.g. "sign", "pair_sum" with parameter n = |H|.
Hypermagma builtin_hypermagma(std::string_view name, std::optional<int> param = std::nullopt);
// Parses "name" or "name(n)".
Hypermagma builtin_hypermagma_uri(std::string_view uri);
// Family constructors without the validity-range guard.
Hypermagma raw_family(std::string_view name, int n);
std::vector<std::string> builtin_hypermagma_names();

struct HyperpairOptions {
  Subset s0 = 0;  // 0 means {𝟘}
  bool force_trivial_tangibles = false;
  std::size_t family_limit = 1 << 16;
};

struct Hyperpair {
  Hypermagma base;
  std::vector<Subset> family;
  std::vector<bool> zero_family;
  Table add;
  FiniteMonoid tangible_monoid;
  std::vector<int> tangible_of;  // monoid element -> carrier element acting by elementwise product
  Table left_action;             // |T| x |family|
  Table right_action;
  Report closure_report;

  int size() const { return static_cast<int>(family.size()); }
  int index(Subset s) const;  // -1 if absent
  int zero_index() const;
  std::vector<std::string> labels() const;
  TModule to_module() const;
  Pair to_pair() const;
  SurpassingRelation subset_order() const;
  // S₁ ⪯ S₂ iff every s₁ ∈ S₁ has some s₂ ∈ S₂ with s₁ ⪯ s₂.
  SurpassingRelation induced_order(const SurpassingRelation& on_carrier) const;
};

Hyperpair build_hyperpair(const Hypermagma& h, const HyperpairOptions& options = {});

std::vector<Subset> weakly_neutral_family(const Hypermagma& h, Report* report = nullptr);

enum class Suite { hypersemigroup, hypergroup };
Suite parse_suite(std::string_view name);
std::string_view to_string(Suite s);

struct CensusResult {
  std::vector<Hypermagma> tables;
  std::size_t enumerated = 0;
  std::size_t passing_before_dedup = 0;
};

// Commutative tables with the hyperzero fixed: (2^n)^(n(n-1)/2).
double census_candidates(int order);
CensusResult census(int order, Suite suite, int workers = 1);
// Lexicographically least table under permutations fixing index 0.
Hypermagma canonical_form(const Hypermagma& h);

}  // namespace hyperalg
