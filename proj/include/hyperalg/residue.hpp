#pragma once

#include <string>
#include <vector>

#include "hyperalg/core.hpp"
#include "hyperalg/hyper.hpp"

namespace hyperalg {

struct FiniteField {
  int order = 0;
  int characteristic = 0;
  int degree = 0;
  std::string modulus;  // irreducible polynomial, empty for prime fields
  std::vector<std::string> labels;
  Table add;
  Table mul;
};

// Orders 2, 3, 4, 5, 7, 8, 9. Moduli: x^2+x+1 (4), x^3+x+1 (8), x^2+1 (9).
FiniteField finite_field(int order);
FiniteMonoid multiplicative_monoid(const FiniteField& f);
// F as a module over its own multiplicative monoid, with both actions, unit and mul.
TModule field_module(const FiniteField& f);
// F^k with coordinatewise operations, acted on diagonally by the multiplicative monoid.
TModule field_power_module(const FiniteField& f, int k);

struct Subgroup {
  FiniteMonoid parent;
  std::vector<int> members;
};

Subgroup subgroup(const FiniteMonoid& parent, const std::vector<std::string>& labels);
Report check_subgroup(const Subgroup& g);

struct ResidueHypermodule {
  std::vector<std::vector<int>> classes;
  std::vector<int> projection;
  Hypermagma hypermagma;
};

// Orbits of the maps generated by `actions` (each a carrier permutation fixing 𝟘), with coset hyperaddition.
ResidueHypermodule orbit_residue(const TModule& m, const std::vector<std::vector<int>>& actions);
ResidueHypermodule residue(const TModule& m, const Subgroup& g);

struct ResidueConstants {
  Subset e = 0;
  Subset ee = 0;
  Subset e_plus_e = 0;
  std::vector<Subset> class_times_e;
  Report report;
};

ResidueConstants residue_constants(const TModule& m, const Subgroup& g, const ResidueHypermodule& r);

struct InducedSurpassing {
  SurpassingRelation on_classes;
  Report report;
};

InducedSurpassing induced_surpassing(const Pair& p, const SurpassingRelation& s, const Subgroup& g);

// Coefficient domain: every monoid element, plus "omitted" when the monoid has no absorbing element.
bool is_free_base(const TModule& m, const std::vector<int>& base, std::vector<std::vector<int>>* coordinates = nullptr);

struct ResidueFreeBase {
  std::vector<int> base_classes;
  Report report;
};

ResidueFreeBase residue_free_base(const TModule& m, const std::vector<int>& base, const Subgroup& g);

}  // namespace hyperalg
