#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperalg/core.hpp"
#include "hyperalg/hyper.hpp"
#include "hyperalg/residue.hpp"

namespace hyperalg {

inline constexpr std::size_t kDefaultTermBudget = std::size_t{1} << 22;

// All multisets of generators 0..g-1 of length 1..L. Ids are ordered by length, then lexicographically.
class TermSpace {
 public:
  TermSpace() = default;
  TermSpace(int generators, int bound);

  int generators() const { return generators_; }
  int bound() const { return bound_; }
  int size() const { return static_cast<int>(lengths_.size()); }
  std::span<const int> term(int id) const;
  int length(int id) const { return lengths_[id]; }
  int find(std::span<const int> sorted) const;  // -1 if longer than the bound
  int extend(int id, int g) const;              // -1 if the result is longer than the bound

  static double count(int generators, int bound);
  static int largest_feasible(int generators, std::size_t budget);

 private:
  double rank_within(std::span<const int> sorted) const;

  int generators_ = 0;
  int bound_ = 0;
  std::vector<int> data_;  // stride bound_
  std::vector<int> lengths_;
  std::vector<std::size_t> offsets_;  // first id of each length
  std::vector<std::vector<double>> ways_;
};

struct Rule {
  std::vector<int> lhs;  // sorted generators
  std::vector<int> rhs;
  bool operator==(const Rule&) const = default;
  auto operator<=>(const Rule&) const = default;
};

struct CongruenceClosure {
  TermSpace space;
  std::vector<Rule> rules;
  std::vector<int> class_of_term;
  std::vector<std::vector<int>> members;  // ascending term ids; front() is the representative
  Table act;                              // class x generator, -1 where unknown
  Table class_add;                        // -1 where unknown; total when saturated
  bool saturated = false;
  std::string saturation_detail;

  int bound() const { return space.bound(); }
  int generators() const { return space.generators(); }
  int class_count() const { return static_cast<int>(members.size()); }
  int representative(int c) const { return members[c].front(); }
  int generator_class(int g) const { return class_of_term[g]; }
  // Class of an arbitrary generator multiset; beyond the bound only when saturated.
  std::optional<int> classify(std::vector<int> gens) const;
  int add(int a, int b) const { return class_add(a, b); }
  // Stable fingerprint of the partition of ids 0..size-1.
  std::vector<int> partition() const { return class_of_term; }
};

// Rules are deduplicated; trivial rules are dropped. Bound must cover every rule side.
CongruenceClosure close_congruence(int generators, std::vector<Rule> rules, int bound,
                                   std::size_t budget = kDefaultTermBudget);

// Value of a class-level map obtained by evaluating generators in a commutative semigroup.
struct InducedMap {
  std::vector<int> map;  // class -> target value
  Report report;
  bool ok() const { return report.ok(); }
};

// Checks every rule and every enumerated member against the target before reporting a map.
InducedMap induce(const CongruenceClosure& c, const std::vector<int>& generator_value,
                  const std::function<int(int, int)>& add);

struct TensorOptions {
  int bound = 4;
  bool negation = false;
  std::size_t budget = kDefaultTermBudget;
};

struct Tensor {
  TModule m1;
  TModule m2;
  FiniteMonoid over;
  bool negation = false;
  CongruenceClosure closure;

  int generator(int i, int j) const { return i * m2.size() + j; }
  int first(int g) const { return g / m2.size(); }
  int second(int g) const { return g % m2.size(); }
  int simple(int i, int j) const { return closure.generator_class(generator(i, j)); }
  int zero_class() const { return simple(m1.zero, m2.zero); }
  bool saturated() const { return closure.saturated; }
  int class_count() const { return closure.class_count(); }
  std::string term_label(int term) const;
  std::vector<std::string> class_labels() const;
  // Induced map from values on simple tensors.
  InducedMap from_simple(const std::function<int(int, int)>& value,
                         const std::function<int(int, int)>& add) const;
  // Carrier = classes; left action from m1, right action from m2 when well defined. Needs saturation.
  TModule to_module(Report* report = nullptr) const;
};

Tensor build_tensor(const TModule& m1, const TModule& m2, const FiniteMonoid& over,
                    const TensorOptions& options = {});
// Over the left acting monoid of m2.
Tensor build_tensor(const TModule& m1, const TModule& m2, const TensorOptions& options = {});

// Balanced maps are enumerated from the module tables, independently of the closure.
Report universal_property_oracle(const Tensor& t, const std::vector<TModule>& targets,
                                 double cap = 1 << 22);
// B, Z/2, Z/3, the chain 0<1<2 under max, and the one-element module.
std::vector<TModule> default_oracle_targets();

Pair tensor_pair(const Pair& p1, const Pair& p2, const Tensor& t, Report* report = nullptr);

struct FreeCodec {
  TModule m1;
  TModule m2;
  std::vector<int> base;
  std::vector<std::vector<int>> coordinates;  // per element of m2, coefficient per base element (-1 omitted)

  int rank() const { return static_cast<int>(base.size()); }
  int vector_count() const;
  std::vector<int> decode(int x) const;
  int encode(const std::vector<int>& v) const;
  int encode_simple(int v, int w) const;
  int add(int x, int y) const;
  std::string label(int x) const;
};

// The acting monoid must have an absorbing element.
FreeCodec free_normal_form(const TModule& m1, const TModule& m2, const std::vector<int>& base);
// Identical partitions: a well-defined, bijective, additive class map onto codec vectors.
Report compare_codec(const Tensor& t, const FreeCodec& codec, std::vector<int>* map = nullptr);

InducedMap tensor_of_homs(const Tensor& src, const Tensor& dst, const std::vector<int>& f1,
                          const std::vector<int>& f2);

// f: A -> B and g: B -> A additive, mutually inverse, and equivariant for matching actions.
Report check_inverse_pair(const TModule& a, const TModule& b, const std::vector<int>& f,
                          const std::vector<int>& g);

struct IsoCase {
  std::string name;
  bool undetermined = false;
  Report report;
};

// (x⊕y)⊗other ≅ (x⊗other)⊕(y⊗other) when sum_left, else other⊗(x⊕y) ≅ (other⊗x)⊕(other⊗y).
IsoCase check_direct_sum_iso(const TModule& x, const TModule& y, const TModule& other, bool sum_left,
                             const FiniteMonoid& over, const TensorOptions& options = {});

// Unit, direct sum, associativity and swap isomorphisms on the shipped fixtures.
std::vector<IsoCase> check_assoc_comm_dist(const TensorOptions& options = {});

struct MonoidTensor {
  std::vector<int> class_of;  // index a1 * |t2| + a2
  std::vector<std::vector<int>> members;
  std::optional<FiniteMonoid> monoid;  // when the componentwise product is well defined
  int class_count() const { return static_cast<int>(members.size()); }
};

// emb1, emb2: T -> T₁, T₂. Slide (x₁a, x₂) ~ (x₁, a x₂) with x₁a = t1(x₁, emb1(a)), a x₂ = t2(emb2(a), x₂).
MonoidTensor monoid_tensor(const FiniteMonoid& t1, const FiniteMonoid& t2, const FiniteMonoid& over,
                           const std::vector<int>& emb1, const std::vector<int>& emb2);
// (a₁ ⊗ a₂) b = a₁ b a₂ is constant on monoid-tensor classes.
Report check_monoid_tensor_action(const MonoidTensor& mt, const FiniteMonoid& t1, const FiniteMonoid& t2,
                                  const Tensor& t);

struct Extension {
  FiniteMonoid tprime;
  std::vector<int> embedding;  // T -> T′
  TModule m;
  bool admissible = false;
  CongruenceClosure closure;

  int generator(int a, int v) const { return a * m.size() + v; }
  TModule to_module(Report* report = nullptr) const;
};

Extension tensor_extension(const FiniteMonoid& tprime, const std::vector<int>& embedding, const TModule& m,
                           bool admissible, const TensorOptions& options = {});

struct NRTensor {
  Hypermagma h1;
  Hypermagma h2;

  int size() const { return h1.size() * h2.size(); }
  int simple(int i, int j) const { return i * h2.size() + j; }
  std::string label(int x) const;
  std::string subset(Subset s) const;
  Hypermagma hypermagma() const;
};

NRTensor nr_tensor(const Hypermagma& h1, const Hypermagma& h2);
Subset nr_add(const NRTensor& t, int x, int y);
Subset nr_add(const NRTensor& t, Subset x, Subset y);

struct NRWitness {
  NRTensor tensor;
  int v1 = 0, v2 = 0, w1 = 0, w2 = 0;
  Subset first = 0;   // ((v₁⊗w₁)⊞(v₁⊗w₂)) ⊞ ((v₂⊗w₁)⊞(v₂⊗w₂))
  Subset second = 0;  // (v₁⊗w₁) ⊞ (((v₁⊗w₂)⊞(v₂⊗w₁)) ⊞ (v₂⊗w₂))
};

NRWitness nr_assoc_counterexample();

struct RecombinationChain {
  int v1 = 0, v2 = 0, v3 = 0;  // v₃ = v₁ + v₂
  std::vector<std::string> steps;
  std::vector<int> classes;  // class of each step
  Report report;
};

// (v₃⊗v₂) + (((v₂⊗v₁) + (v₂⊗v₂)) + (v₁⊗v₃)) rewritten stepwise into v₃⊗(v₂+v₃) inside t = M⊗M.
RecombinationChain recombination_chain(const Tensor& t, int v1, int v2);

struct ResidueTensorIso {
  Tensor lhs;  // (M₁/G₁) ⊗ (M₂/G₂) on hyperpair modules
  Tensor base;  // M₁ ⊗ M₂
  Hyperpair rhs;  // hyperpair of (M₁⊗M₂)/(G₁×G₂)
  std::vector<int> map;
  Report report;
  bool undetermined = false;
};

ResidueTensorIso residue_tensor_iso(const TModule& m1, const Subgroup& g1, const TModule& m2,
                                    const Subgroup& g2, const TensorOptions& options = {});

// Tensor of two hyperpairs over their (common) tangible monoid.
Tensor hyperpair_tensor(const Hyperpair& p1, const Hyperpair& p2, const TensorOptions& options = {});

// Additive closure of the componentwise ⊆ relation on generators, as a relation on classes.
SurpassingRelation tensor_inclusion(const Tensor& t, const Hyperpair& p1, const Hyperpair& p2);

Report subset_distributivity(const Hyperpair& p1, const Hyperpair& p2, const Tensor& t, double cap = 1e6);

}  // namespace hyperalg
