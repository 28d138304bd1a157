#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperalg/core.hpp"
#include "hyperalg/hyper.hpp"

namespace hyperalg {

// B = {0,1} with 1+1 = 1 over the boolean monoid.
TModule boolean_module();
// B over the trivial monoid {1}.
TModule boolean_module_trivial();
// B^k over the boolean monoid, labels are bit strings.
TModule boolean_power(int k);
// Z/n over the trivial monoid.
TModule cyclic_module(int n);
// Max-chain 0 < 1 < ... < n-1 over the trivial monoid.
TModule chain_module(int n);
TModule one_point_module();

// Monoids: "trivial", "boolean", "C<n>" (cyclic group), "F<q>" (multiplicative monoid of F_q),
// or the name of a builtin hypermagma with multiplication.
FiniteMonoid builtin_monoid(std::string_view name);
// Modules: "B", "B/1", "B^k", "Z/n", "chain(n)", "one", "F<q>", "F<q>^k", or a builtin hypermagma
// (its hyperpair module).
TModule builtin_module(std::string_view name);
std::vector<std::string> builtin_module_names();

struct TensorFixture {
  std::string name;
  TModule m1;
  TModule m2;
  FiniteMonoid over;
};

// Saturating fixtures with carriers at most 4.
std::vector<TensorFixture> tensor_fixtures();

}  // namespace hyperalg
