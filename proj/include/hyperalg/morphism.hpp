#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperalg/core.hpp"
#include "hyperalg/hyper.hpp"
#include "hyperalg/tensor.hpp"

namespace hyperalg {

inline constexpr double kDefaultMapCap = 1 << 16;

// A pair together with a pre-order; hyper is set when elements are subsets of a hypermagma.
struct OrderedPair {
  Pair pair;
  SurpassingRelation order;
  std::optional<Hyperpair> hyper;

  int size() const { return pair.size(); }
  const TModule& module() const { return pair.module; }
};

OrderedPair ordered_classical(const TModule& m);
OrderedPair ordered_hyperpair(const Hyperpair& h);
OrderedPair ordered(const Pair& p, SurpassingRelation order);

struct MorphismFlags {
  bool multiplicative = false;
  bool homomorphism = false;
  bool order_preserving = false;
  bool colax = false;  // ⪯-morphism
  bool lax = false;    // ≻-morphism
  bool paired = false;
  bool weak = false;

  bool operator==(const MorphismFlags&) const = default;
};

std::string flags_label(const MorphismFlags& f);

struct MorphismTable {
  std::vector<int> map;
  MorphismFlags flags;
  Report report;
};

// Runs every check exhaustively. The weak check is exact: it closes the pairs (Σbᵢ, Σf(bᵢ)) under addition.
MorphismTable classify(const std::vector<int>& f, const OrderedPair& src, const OrderedPair& dst);

// Exceptions to hom ⇒ ⪯ ⇒ weak on one classified map (see flag_chain_report).
struct ChainCheck {
  bool hom_not_colax = false;   // paired order-preserving homomorphism that is not a ⪯-morphism
  bool colax_not_weak = false;  // paired ⪯-morphism that is not weak, target A₀′ upward closed
  bool hom_not_weak = false;    // paired homomorphism that is not weak
};

ChainCheck flag_chain(const MorphismTable& m, const OrderedPair& dst);

// Backtracking over maps with f(𝟘) = 𝟘 and both actions respected. Cap bounds visited nodes.
std::vector<std::vector<int>> enumerate_multiplicative(const Pair& src, const Pair& dst, double cap = kDefaultMapCap,
                                                       bool additive = false);

struct ChainSummary {
  std::size_t maps = 0;
  std::size_t homomorphisms = 0;
  std::size_t colax = 0;
  std::size_t weak = 0;
  std::size_t exceptions = 0;
  Report report;
};

// Classifies every multiplicative map src → dst and counts flag-chain exceptions.
ChainSummary flag_chain_report(const OrderedPair& src, const OrderedPair& dst, double cap = kDefaultMapCap);

struct MapModule {
  std::vector<std::vector<int>> maps;
  OrderedPair pair;  // pointwise addition, actions and order
  Report report;
  std::map<std::vector<int>, int> lookup;

  int size() const { return static_cast<int>(maps.size()); }
  int index_of(const std::vector<int>& f) const;  // -1 if absent
};

// Hom(A, A′) with pointwise addition and the two actions.
MapModule hom_bimagma(const TModule& src, const TModule& dst, double cap = kDefaultMapCap);
// WMor with WMor₀ = {f : f(A) ⊆ A₀′}; asserts sum-closure and that every paired hom is weak.
MapModule wmor_pair(const OrderedPair& src, const OrderedPair& dst, double cap = kDefaultMapCap);
// ⪯-morphisms (paired ones only by default) with the same pointwise structure.
MapModule colax_pair(const OrderedPair& src, const OrderedPair& dst, double cap = kDefaultMapCap,
                     bool paired_only = true);

// Smallest pre-order on classes containing the given generator pairs, closed under addition.
SurpassingRelation generated_order(const CongruenceClosure& c, const std::function<bool(int, int)>& related);

// Tensor M₁ ⊗ M₂ in coordinates of a free base of M₂, as an ordered pair.
// Zero set: additive closure of v⊗w with v ∈ M₁₀ or w ∈ M₂₀. Order: coordinatewise.
OrderedPair codec_pair(const FreeCodec& codec, const OrderedPair& m1, const Pair& m2);

// (f₁⊗f₂)(Σ vⱼ⊗bⱼ) = Σ f₁(vⱼ)⊗f₂(bⱼ) on codec vectors; f₂ must be a homomorphism, f₁ weak or ⪯.
MorphismTable tensor_free_mixed(const std::vector<int>& f1, const std::vector<int>& f2, const FreeCodec& src,
                                const OrderedPair& src1, const Pair& src2, const FreeCodec& dst,
                                const OrderedPair& dst1, const Pair& dst2);

struct PartialTensorMorphism {
  std::vector<std::optional<int>> value;  // nullopt is the ∅ marker
  Report report;
};

// f₁(v)⊗f₂(b) on single-summand vectors, 𝟘 on the zero vector, ∅ otherwise.
// The defined-sum inequality is asserted when f₁ is a ⪯-morphism.
PartialTensorMorphism tensor_partial(const std::vector<int>& f1, const std::vector<int>& f2, const FreeCodec& src,
                                     const OrderedPair& src1, const FreeCodec& dst, const OrderedPair& dst1,
                                     const OrderedPair& dst_pair);

struct MeetTensor {
  std::vector<Subset> meet;                 // per class; 0 is ∅
  std::vector<std::vector<Subset>> values;  // per class, every Σ h(vᵢ, wᵢ) over all representations
  std::vector<Subset> bounded_meet;         // meet over the enumerated members only
  Report report;
};

// value(v, w) indexes the target family. Exact over representations of every length.
// Refuses targets whose family with ∅ is not closed under intersection.
MeetTensor meet_tensor(const Tensor& t, const std::function<int(int, int)>& value, const Hyperpair& target);

// ⊇-law of the set-valued tensor: F(x+y) ⊇ F(x) ⊞ F(y) elementwise.
Report set_tensor_law(const Tensor& t, const MeetTensor& m, const Hyperpair& target);

struct ExtendedMorphism {
  Extension source;
  Extension target;
  std::vector<int> map;  // class -> class
  OrderedPair src_pair;
  OrderedPair dst_pair;
  MorphismTable table;
  Report report;
};

enum class ExtensionMode { cosets, free_base };

// cosets: T′ = ⊔ cᵢT and f̃(cᵢaᵢ⊗y) = cᵢ⊗f(aᵢy). free_base: f̃(Σ aᵢ′⊗bᵢ) = Σ aᵢ′⊗f(bᵢ) over the admissible extension.
ExtendedMorphism tensor_extend_weak(const std::vector<int>& f, const OrderedPair& src, const OrderedPair& dst,
                                    const FiniteMonoid& tprime, const std::vector<int>& embedding, ExtensionMode mode,
                                    const std::vector<int>& base = {}, const TensorOptions& options = {});

enum class AdjointMode { weak, colax };

struct AdjointResult {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  std::size_t inner = 0;  // |WMor(M₁, M₃)| or its ⪯ counterpart
  Report report;
};

// Maps on M₁ × M₂ against M₂ → (M₁ → M₃); both sides enumerated independently.
AdjointResult adjoint_wmor(const OrderedPair& m1, const OrderedPair& m2, const OrderedPair& m3,
                           AdjointMode mode = AdjointMode::weak, double cap = kDefaultMapCap);

struct SectionResult {
  std::size_t maps = 0;          // enumerated g
  std::size_t identity = 0;      // g with Φψ_g = g
  std::size_t psi_colax = 0;     // ψ_g passing the full ⪯-morphism law
  Report report;
};

// g: M₂ → Mor⪯(M₁, M₃) multiplicative and 𝟘 off multiples of base elements.
SectionResult adjoint_section(const OrderedPair& m1, const OrderedPair& m2, const std::vector<int>& base,
                              const OrderedPair& m3, double cap = kDefaultMapCap);

struct CanonicalResult {
  std::size_t phi_inputs = 0;
  std::size_t psi_inputs = 0;
  std::size_t psi_colax = 0;
  Report report;
};

// Φ on ⪯-morphisms out of the tensor and Ψ through the meet formula; membership only.
CanonicalResult adjoint_canonical(const OrderedPair& m1, const OrderedPair& m2, const OrderedPair& m3,
                                  const TensorOptions& options = {}, double cap = kDefaultMapCap);

struct Pullback {
  OrderedPair pair;
  MorphismTable table;
  Report report;
};

// A₀ = f⁻¹(A₀′); when injective also b₁ ⪯ b₂ ⇔ f(b₁) ⪯ f(b₂).
Pullback paired_pullback(const std::vector<int>& f, const TModule& src, const OrderedPair& dst, bool order = false);
// (A′, f(A₀)) for a homomorphism f.
Pullback image_pair(const std::vector<int>& f, const Pair& src, const TModule& dst);

}  // namespace hyperalg
