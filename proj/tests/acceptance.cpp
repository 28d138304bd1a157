// One line per criterion: "criterion N: PASS" or "criterion N: FAIL", followed by indented detail.
// Usage: acceptance <path to the hyperalg executable> [scratch directory]

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hyperalg/fixtures.hpp"
#include "hyperalg/io.hpp"
#include "hyperalg/morphism.hpp"
#include "hyperalg/residue.hpp"
#include "hyperalg/tensor.hpp"

using namespace hyperalg;
namespace fs = std::filesystem;
using Json = io::Document;

namespace {

std::string g_cli;
fs::path g_scratch;

struct Run {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run cli(const std::vector<std::string>& args) {
  std::string cmd = quote(g_cli);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json cli_json(const std::vector<std::string>& args, int* code = nullptr) {
  Run r = cli(args);
  if (code) *code = r.code;
  try {
    return Json::parse(r.out);
  } catch (const std::exception&) {
    return Json::object();
  }
}

class Criterion {
 public:
  explicit Criterion(std::ostream& log) : log_(log) {}
  bool expect(bool cond, const std::string& what) {
    if (!cond) {
      ok_ = false;
      log_ << "    fail: " << what << "\n";
    }
    return cond;
  }
  void note(const std::string& s) { log_ << "    " << s << "\n"; }
  bool ok() const { return ok_; }
  void fail(const std::string& what) { expect(false, what); }

 private:
  std::ostream& log_;
  bool ok_ = true;
};

std::string str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

// ---------------------------------------------------------------- 1

void criterion1(Criterion& c) {
  int code = 0;
  Json j = cli_json({"repro", "nar1"}, &code);
  c.expect(code == 0, "repro nar1 exit code " + std::to_string(code));
  const Json& r = j.value("result", Json::object());
  c.expect(r.value("symbolic", "") == "({v₁⊗w₁}, ∅)", "symbolic bracketings " + str(r.value("symbolic", Json())));
  c.expect(r.value("second", "") == "∅", "second bracketing " + str(r.value("second", Json())));
  c.expect(r.value("fixture", "") == "tropical_chain(2)", "fixture " + str(r.value("fixture", Json())));
  // The first bracketing is the singleton of v₁⊗w₁.
  std::string v1 = r.value("v1", ""), w1 = r.value("w1", "");
  c.expect(r.value("first", "") == "{" + v1 + "⊗" + w1 + "}", "first bracketing " + str(r.value("first", Json())));
  c.note("first = " + str(r.value("first", Json())) + ", second = " + str(r.value("second", Json())));
}

// ---------------------------------------------------------------- 2

void criterion2(Criterion& c) {
  struct Case {
    const char* field;
    const char* subgroup;
  };
  for (const Case& k : {Case{"F3", "1,2"}, Case{"F5", "1,4"}, Case{"F7", "1,2,4"}}) {
    fs::path out = g_scratch / (std::string("quotient_") + k.field + ".toml");
    int code = 0;
    cli_json({"quotient", std::string("builtin:") + k.field, "--subgroup", k.subgroup, "--out", out.string()}, &code);
    if (!c.expect(code == 0 && fs::exists(out), std::string("quotient ") + k.field + " exit " + std::to_string(code)))
      continue;
    Json check = cli_json({"check", out.string(), "--suite", "hyperfield"}, &code);
    c.expect(code == 0 && check.value("verdict", "") == "pass",
             std::string("hyperfield suite on ") + k.field + "/{" + k.subgroup + "} exit " + std::to_string(code));
    io::Library lib = io::load_library(out);
    if (!c.expect(lib.hypermagmas.size() == 1, "one hypermagma in the emitted file")) continue;
    const Hypermagma& h = lib.hypermagmas.begin()->second;
    c.note(std::string(k.field) + "/{" + k.subgroup + "}: " + std::to_string(h.size()) + " classes, hyperfield");
    if (std::string(k.field) == "F3") {
      int zero = h.index_of("0"), one = h.index_of("1");
      c.expect(h.size() == 2, "F3/{1,2} has two classes");
      c.expect(h.add(one, one) == (singleton(zero) | singleton(one)), "1+1 = {0,1}");
      Hypermagma krasner = builtin_hypermagma("krasner");
      Hypermagma lhs = h, rhs = krasner;
      c.expect(canonical_form(lhs).table == canonical_form(rhs).table, "isomorphic to the Krasner table");
    }
  }
}

// ---------------------------------------------------------------- 3

struct Facts {
  bool ran = false;
  std::string verdict;
  Json facts = Json::object();
};

Facts hypersemigroup(const std::string& name, int n) {
  Facts f;
  int code = 0;
  Json j = cli_json({"check", "builtin:" + name + "(" + std::to_string(n) + ")", "--suite", "hypersemigroup"}, &code);
  if (!j.contains("checks") || j["checks"].empty()) return f;
  f.ran = true;
  f.verdict = j.value("verdict", "");
  f.facts = j["checks"][0]["report"].value("facts", Json::object());
  return f;
}

bool fact(const Facts& f, const char* key) { return f.facts.value(key, false); }

void criterion3(Criterion& c) {
  for (int n = 3; n <= 6; ++n) {
    Facts f = hypersemigroup("mass_b", n);
    c.expect(f.ran && fact(f, "hypergroup"), "mass_b(" + std::to_string(n) + ") is a hypergroup");
  }
  for (int n = 4; n <= 6; ++n) {
    Facts f = hypersemigroup("mass_c", n);
    c.expect(f.ran && f.verdict == "pass" && fact(f, "hypergroup"),
             "mass_c(" + std::to_string(n) + ") is a hypergroup (verdict " + f.verdict +
                 ", uniquely_negated " + (fact(f, "uniquely_negated") ? "true" : "false") + ")");
  }
  for (int n = 2; n <= 6; ++n) {
    Facts f = hypersemigroup("idem", n);
    c.expect(f.ran && !fact(f, "uniquely_negated"), "idem(" + std::to_string(n) + ") is not uniquely negated");
  }
  for (int n = 2; n <= 6; ++n) {
    Facts p = hypersemigroup("pair_sum", n), a = hypersemigroup("all_sum", n);
    c.expect(p.ran && !fact(p, "property_N"), "pair_sum(" + std::to_string(n) + ") fails Property N");
    c.expect(a.ran && fact(a, "property_N"), "all_sum(" + std::to_string(n) + ") has Property N");
  }
}

// ---------------------------------------------------------------- 4

void criterion4(Criterion& c) {
  TensorOptions o;
  o.bound = 4;
  int n = 0;
  for (const auto& fx : tensor_fixtures()) {
    if (fx.m1.size() > 4 || fx.m2.size() > 4) continue;
    Tensor t = build_tensor(fx.m1, fx.m2, fx.over, o);
    if (!c.expect(t.saturated(), fx.name + " saturated at L = 4")) continue;
    Report r = universal_property_oracle(t, default_oracle_targets());
    c.expect(r.ok(), fx.name + ": " + r.summary());
    ++n;
  }
  c.expect(n >= 5, "at least five saturated fixtures");
  c.note(std::to_string(n) + " fixtures, zero oracle violations required");
}

// ---------------------------------------------------------------- 5

void criterion5(Criterion& c) {
  int compared = 0;
  for (const auto& fx : tensor_fixtures()) {
    const int n = fx.m2.size();
    if (!fx.m2.left_action().monoid.absorbing) continue;  // the normal form does not apply
    std::vector<int> base;
    for (int a = 0; a < n && base.empty(); ++a)
      if (is_free_base(fx.m2, {a})) base = {a};
    for (int a = 0; a < n && base.empty(); ++a)
      for (int b = a + 1; b < n && base.empty(); ++b)
        if (is_free_base(fx.m2, {a, b})) base = {a, b};
    if (base.empty()) continue;
    Tensor t = build_tensor(fx.m1, fx.m2, fx.over);
    FreeCodec codec = free_normal_form(fx.m1, fx.m2, base);
    Report r = compare_codec(t, codec);
    c.expect(r.ok(), fx.name + " codec: " + r.summary());
    ++compared;
  }
  c.expect(compared >= 4, "at least four free fixtures");
  std::size_t iso = 0;
  for (const auto& k : check_assoc_comm_dist()) {
    c.expect(!k.undetermined && k.report.ok(), k.name + ": " + k.report.summary());
    ++iso;
  }
  c.note(std::to_string(compared) + " codec comparisons, " + std::to_string(iso) + " canonical isomorphisms");
}

// ---------------------------------------------------------------- 6

void criterion6(Criterion& c) {
  TModule f3 = builtin_module("F3");
  auto g = subgroup(f3.left_action().monoid, {"1", "2"});
  TensorOptions o;
  o.bound = 3;
  ResidueTensorIso r = residue_tensor_iso(f3, g, f3, g, o);
  c.expect(!r.undetermined, "saturated at L = 3");
  c.expect(r.report.ok(), r.report.summary());
  c.expect(r.lhs.class_count() == r.rhs.size(), "class counts agree");
  c.note(std::to_string(r.lhs.class_count()) + " classes on each side");
}

// ---------------------------------------------------------------- 7

OrderedPair hyper(const char* name) { return ordered_hyperpair(build_hyperpair(builtin_hypermagma(name))); }

void criterion7(Criterion& c) {
  struct Triple {
    std::string name;
    OrderedPair p;
  };
  std::vector<Triple> triples = {{"B,B,B", ordered_classical(builtin_module("B"))},
                                 {"K,K,K", hyper("krasner")},
                                 {"F3,F3,F3", ordered_classical(builtin_module("F3"))}};
  for (const auto& t : triples)
    for (auto mode : {AdjointMode::weak, AdjointMode::colax}) {
      const char* m = mode == AdjointMode::weak ? "weak" : "colax";
      AdjointResult r = adjoint_wmor(t.p, t.p, t.p, mode);
      c.expect(r.lhs == r.rhs && r.report.ok(), t.name + " " + m + ": " + std::to_string(r.lhs) + " vs " +
                                                    std::to_string(r.rhs) + ", " + r.report.summary());
      c.note(t.name + " " + m + ": " + std::to_string(r.lhs) + " = " + std::to_string(r.rhs));
    }
  OrderedPair f3 = ordered_classical(builtin_module("F3"));
  SectionResult s1 = adjoint_section(f3, f3, {1}, f3);
  c.expect(s1.maps > 0 && s1.identity == s1.maps && s1.report.ok(),
           "rank 1: " + std::to_string(s1.identity) + " of " + std::to_string(s1.maps));
  TModule b2 = builtin_module("B^2");
  OrderedPair b = ordered_classical(builtin_module("B"));
  SectionResult s2 = adjoint_section(b, ordered_classical(b2), {b2.index_of("10"), b2.index_of("01")}, b);
  c.expect(s2.maps > 0 && s2.identity == s2.maps && s2.report.ok(),
           "rank 2: " + std::to_string(s2.identity) + " of " + std::to_string(s2.maps));
  c.note("sections: rank 1 " + std::to_string(s1.identity) + "/" + std::to_string(s1.maps) + ", rank 2 " +
         std::to_string(s2.identity) + "/" + std::to_string(s2.maps));
}

// ---------------------------------------------------------------- 8

Subset elementwise_product(const Hypermagma& h, Subset a, Subset b) {
  Subset out = 0;
  for (int x : members(a))
    for (int y : members(b)) out |= singleton((*h.mul)(x, y));
  return out;
}

void meet_products(Criterion& c, const char* name, std::size_t& runs) {
  Hyperpair hp = build_hyperpair(builtin_hypermagma(name));
  OrderedPair p = ordered_hyperpair(hp);
  TensorOptions o;
  o.bound = 4;
  Tensor t = hyperpair_tensor(hp, hp, o);
  if (!c.expect(t.saturated(), std::string(name) + "⊗" + name + " saturated")) return;
  MapModule colax = colax_pair(p, p);
  for (const auto& f1 : colax.maps)
    for (const auto& f2 : colax.maps) {
      bool defined = true;
      auto value = [&](int v, int w) {
        int i = hp.index(elementwise_product(hp.base, hp.family[f1[v]], hp.family[f2[w]]));
        if (i < 0) {
          defined = false;
          i = hp.zero_index();
        }
        return i;
      };
      MeetTensor m = meet_tensor(t, value, hp);
      if (!defined) continue;
      ++runs;
      c.expect(m.report.ok(), std::string(name) + " meet: " + m.report.summary());
      c.expect(set_tensor_law(t, m, hp).ok(), std::string(name) + " set tensor law");
    }
}

void criterion8(Criterion& c) {
  std::vector<std::pair<std::string, OrderedPair>> pairs = {
      {"B", ordered_classical(builtin_module("B"))}, {"B^2", ordered_classical(builtin_module("B^2"))},
      {"K", hyper("krasner")},                        {"S", hyper("sign")},
      {"F3", ordered_classical(builtin_module("F3"))}};
  std::size_t maps = 0, exceptions = 0;
  for (const auto& [sn, s] : pairs)
    for (const auto& [dn, d] : pairs) {
      if (!(s.module().left_action().monoid == d.module().left_action().monoid) ||
          !(s.module().right_action().monoid == d.module().right_action().monoid))
        continue;
      ChainSummary r = flag_chain_report(s, d);
      maps += r.maps;
      exceptions += r.exceptions;
      c.expect(r.exceptions == 0 && r.report.ok(), sn + " → " + dn + ": " + r.report.summary());
    }
  c.note(std::to_string(maps) + " maps classified, " + std::to_string(exceptions) + " chain exceptions");

  std::size_t runs = 0;
  TModule f3 = builtin_module("F3");
  Tensor t = build_tensor(f3, f3, f3.left_action().monoid);
  Hyperpair k = build_hyperpair(builtin_hypermagma("krasner"));
  auto value = [&](int v, int w) { return k.index(singleton((*f3.mul)(v, w) == 0 ? 0 : 1)); };
  MeetTensor m = meet_tensor(t, value, k);
  c.expect(m.report.ok(), "F3⊗F3 → K meet: " + m.report.summary());
  ++runs;
  meet_products(c, "krasner", runs);
  meet_products(c, "sign", runs);
  c.note(std::to_string(runs) + " meet tensors checked on every saturated class pair");
}

// ---------------------------------------------------------------- 9

void criterion9(Criterion& c) {
  std::size_t quotients = 0;
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    FiniteField f = finite_field(q);
    FiniteMonoid mm = multiplicative_monoid(f);
    TModule m = field_module(f);
    const int n = q - 1;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Subgroup g{mm, {}};
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) g.members.push_back(i + 1);
      if (!check_subgroup(g).ok()) continue;
      ResidueHypermodule r = residue(m, g);
      ResidueConstants k = residue_constants(m, g, r);
      c.expect(k.ee == k.e_plus_e && k.report.ok(),
               "F" + std::to_string(q) + " |G| = " + std::to_string(g.members.size()) + ": " + k.report.summary());
      ++quotients;
    }
  }
  c.note(std::to_string(quotients) + " quotient hyperfields");
  for (const char* name : {"krasner", "sign"}) {
    Hyperpair p = build_hyperpair(builtin_hypermagma(name));
    TensorOptions o;
    o.bound = 3;
    Tensor t = hyperpair_tensor(p, p, o);
    if (!c.expect(t.saturated(), std::string(name) + " tensor saturated at L = 3")) continue;
    Report r = subset_distributivity(p, p, t);
    c.expect(r.ok(), std::string(name) + ": " + r.summary());
  }
}

// ---------------------------------------------------------------- 10

void criterion10(Criterion& c) {
  for (int order = 1; order <= 3; ++order) {
    std::vector<std::string> args = {"census", "--order", std::to_string(order), "--suite", "hypergroup"};
    Run a = cli(args), b = cli(args);
    c.expect(a.code == 0 && b.code == 0, "census order " + std::to_string(order) + " exit codes");
    c.expect(a.out == b.out, "census order " + std::to_string(order) + " output differs between runs");
    std::istringstream lines(a.out);
    std::string line;
    std::size_t tables = 0;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      Hypermagma h = io::hypermagma_from(Json::parse(line));
      c.expect(check_hypergroup(h).ok(), "reloaded table fails: " + line);
      ++tables;
    }
    c.note("order " + std::to_string(order) + ": " + std::to_string(tables) + " tables");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <hyperalg executable> [scratch directory]\n";
    return 3;
  }
  g_cli = argv[1];
  g_scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "hyperalg_acceptance";
  fs::create_directories(g_scratch);

  const std::vector<std::function<void(Criterion&)>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                                  criterion5, criterion6, criterion7, criterion8,
                                                                  criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::ostringstream detail;
    Criterion c(detail);
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i](c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << i + 1 << ": " << (c.ok() ? "PASS" : "FAIL") << "\n";
    std::cout << detail.str();
    std::cout << "    " << secs << " s\n";
    failed += !c.ok();
  }
  std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
