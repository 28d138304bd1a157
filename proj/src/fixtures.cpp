#include "hyperalg/fixtures.hpp"

#include <charconv>

#include "hyperalg/residue.hpp"

namespace hyperalg {

namespace {

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_hypermagma_name(std::string_view name) {
  auto base = name.substr(0, name.find('('));
  for (const auto& n : builtin_hypermagma_names())
    if (n == base) return true;
  return false;
}

}  // namespace

TModule boolean_module() {
  TModule m;
  m.carrier = {"0", "1"};
  m.add = Table::from_rows({{0, 1}, {1, 1}});
  m.zero = 0;
  Table act = Table::from_rows({{0, 0}, {0, 1}});
  m.left = Action{boolean_monoid(), act};
  m.right = m.left;
  m.unit = 1;
  m.mul = act;
  return m;
}

TModule boolean_module_trivial() { return over_trivial({"0", "1"}, Table::from_rows({{0, 1}, {1, 1}}), 0); }

TModule boolean_power(int k) {
  if (k < 1 || k > 6) throw InputError("B^k needs 1 <= k <= 6");
  TModule m = boolean_module();
  if (k == 1) return m;
  for (int i = 1; i < k; ++i) m = direct_sum(m, boolean_module());
  for (int x = 0; x < m.size(); ++x) {
    std::string s;
    for (int i = k - 1; i >= 0; --i) s += ((x >> i) & 1) ? '1' : '0';
    m.carrier[x] = s;
  }
  return m;
}

TModule cyclic_module(int n) {
  if (n < 1 || n > kMaxCarrier) throw InputError("Z/n needs 1 <= n <= 64");
  std::vector<std::string> labels;
  Table add(n, n);
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) add(a, b) = (a + b) % n;
  }
  return over_trivial(labels, add, 0);
}

TModule chain_module(int n) {
  if (n < 1 || n > kMaxCarrier) throw InputError("chain(n) needs 1 <= n <= 64");
  std::vector<std::string> labels;
  Table add(n, n);
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) add(a, b) = std::max(a, b);
  }
  return over_trivial(labels, add, 0);
}

TModule one_point_module() { return over_trivial({"0"}, Table(1, 1, 0), 0); }

FiniteMonoid builtin_monoid(std::string_view name) {
  if (name == "trivial") return trivial_monoid();
  if (name == "boolean") return boolean_monoid();
  if (name.size() > 1 && name[0] == 'C')
    if (auto n = parse_int(name.substr(1))) return cyclic_group(*n);
  if (name.size() > 1 && name[0] == 'F')
    if (auto q = parse_int(name.substr(1))) return multiplicative_monoid(finite_field(*q));
  if (is_hypermagma_name(name)) return build_hyperpair(builtin_hypermagma_uri(name)).tangible_monoid;
  throw InputError("unknown builtin monoid '" + std::string(name) + "'");
}

TModule builtin_module(std::string_view name) {
  if (name == "B") return boolean_module();
  if (name == "B/1") return boolean_module_trivial();
  if (name == "one") return one_point_module();
  if (name.starts_with("B^"))
    if (auto k = parse_int(name.substr(2))) return boolean_power(*k);
  if (name.starts_with("Z/"))
    if (auto n = parse_int(name.substr(2))) return cyclic_module(*n);
  if (name.starts_with("chain(") && name.ends_with(")"))
    if (auto n = parse_int(name.substr(6, name.size() - 7))) return chain_module(*n);
  if (name.size() > 1 && name[0] == 'F') {
    auto hat = name.find('^');
    auto q = parse_int(name.substr(1, hat == std::string_view::npos ? std::string_view::npos : hat - 1));
    if (q) {
      if (hat == std::string_view::npos) return field_module(finite_field(*q));
      if (auto k = parse_int(name.substr(hat + 1))) return field_power_module(finite_field(*q), *k);
    }
  }
  if (is_hypermagma_name(name)) return build_hyperpair(builtin_hypermagma_uri(name)).to_module();
  throw InputError("unknown builtin module '" + std::string(name) + "'");
}

std::vector<std::string> builtin_module_names() {
  return {"B", "B/1", "B^k", "Z/n", "chain(n)", "one", "F<q>", "F<q>^k", "<hypermagma>"};
}

std::vector<TensorFixture> tensor_fixtures() {
  const TModule bt = boolean_module_trivial();
  const TModule b = boolean_module();
  const TModule f3 = field_module(finite_field(3));
  return {
      {"B/1 ⊗ B/1", bt, bt, trivial_monoid()},
      {"B ⊗ B", b, b, boolean_monoid()},
      {"Z/2 ⊗ Z/2", cyclic_module(2), cyclic_module(2), trivial_monoid()},
      {"Z/3 ⊗ Z/3", cyclic_module(3), cyclic_module(3), trivial_monoid()},
      {"F3 ⊗ F3", f3, f3, multiplicative_monoid(finite_field(3))},
      {"B ⊗ B^2", b, boolean_power(2), boolean_monoid()},
      {"B^2 ⊗ B", boolean_power(2), b, boolean_monoid()},
  };
}

}  // namespace hyperalg
