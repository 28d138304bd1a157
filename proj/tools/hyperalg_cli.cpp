#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperalg/core.hpp"
#include "hyperalg/fixtures.hpp"
#include "hyperalg/hyper.hpp"
#include "hyperalg/io.hpp"
#include "hyperalg/morphism.hpp"
#include "hyperalg/residue.hpp"
#include "hyperalg/tensor.hpp"

namespace fs = std::filesystem;
using namespace hyperalg;
using io::Document;

namespace {

struct Globals {
  int bound = 4;
  bool bound_given = false;
  double cap = kDefaultMapCap;
  std::string format = "json";
  bool format_given = false;
  std::vector<std::string> includes;
  std::string command;
};

// Explicit --format wins; otherwise a file's extension decides.
io::Format structure_format(const Globals& g, const std::string& out_path) {
  if (g.format_given || out_path.empty()) return io::parse_format(g.format);
  return io::format_of(out_path);
}

Verdict worst(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::pass: return 0;
      case Verdict::undetermined: return 1;
      case Verdict::cap: return 2;
      case Verdict::fail: return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

Verdict verdict_of(const Report& r) { return r.ok() ? Verdict::pass : Verdict::fail; }

// Machine-readable output of one command.
class Output {
 public:
  explicit Output(const Globals& g) : g_(g), start_(std::chrono::steady_clock::now()) {
    doc_["command"] = g.command;
    doc_["verdict"] = "pass";
    doc_["bound"] = g.bound;
    doc_["cap"] = g.cap;
    doc_["inputs"] = Document::array();
    doc_["checks"] = Document::array();
  }

  void input(const io::Library& lib, const std::string& ref, const std::string& kind) {
    for (const auto& x : doc_["inputs"])
      if (x["ref"] == ref) return;
    Document d = Document::object();
    d["ref"] = ref;
    d["kind"] = kind;
    d["fingerprint"] = io::fingerprint(lib.structure(ref));
    doc_["inputs"].push_back(std::move(d));
  }

  void check(const std::string& subject, const std::string& suite, const Report& r,
             std::optional<Verdict> v = std::nullopt) {
    Verdict verdict = v.value_or(verdict_of(r));
    Document d = Document::object();
    d["subject"] = subject;
    d["suite"] = suite;
    d["verdict"] = std::string(to_string(verdict));
    d["report"] = io::to_document(r);
    doc_["checks"].push_back(std::move(d));
    merge(verdict);
  }

  void merge(Verdict v) { verdict_ = worst(verdict_, v); }
  Document& result() { return doc_["result"]; }
  Verdict verdict() const { return verdict_; }

  int finish(std::ostream& out) {
    doc_["verdict"] = std::string(to_string(verdict_));
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    doc_["timing_ms"] = std::round(ms * 1000) / 1000;
    out << doc_.dump(2) << '\n';
    return exit_code(verdict_);
  }

 private:
  const Globals& g_;
  Document doc_ = Document::object();
  Verdict verdict_ = Verdict::pass;
  std::chrono::steady_clock::time_point start_;
};

bool is_builtin(const std::string& ref) { return ref.starts_with(io::kBuiltinScheme); }

bool is_hypermagma_builtin(const std::string& ref) {
  if (!is_builtin(ref)) return false;
  auto name = ref.substr(io::kBuiltinScheme.size());
  name = name.substr(0, name.find('('));
  for (const auto& n : builtin_hypermagma_names())
    if (n == name) return true;
  return false;
}

io::Library includes_only(const Globals& g) {
  io::Library lib;
  for (const auto& inc : g.includes) lib.include(io::load_library(inc));
  return lib;
}

std::vector<fs::path> include_paths(const Globals& g) { return {g.includes.begin(), g.includes.end()}; }

std::vector<std::string> split_labels(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw InputError("empty label in '" + s + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw InputError("empty label list");
  return out;
}

std::vector<int> label_indices(const std::vector<std::string>& carrier, const std::string& list) {
  std::vector<int> out;
  for (const auto& l : split_labels(list)) out.push_back(label_index(carrier, l, "element"));
  return out;
}

std::string safe_name(std::string_view s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "structure" : out;
}

// ------------------------------------------------------------------ check

struct Subject {
  std::string name;
  std::optional<FiniteMonoid> monoid;
  std::optional<TModule> module;
  std::optional<Pair> pair;
  std::optional<SurpassingRelation> order;
  std::optional<Hypermagma> hyper;
};

const std::vector<std::string> kSuites = {"monoid",     "module",      "pair",       "surpassing",
                                          "hypersemigroup", "hypergroup", "hyperfield", "propertyN",
                                          "circ-distributive", "all"};

std::vector<Subject> subjects(const std::string& target, const std::string& only, const Globals& g,
                              io::Library& lib, Output& out) {
  std::vector<Subject> s;
  if (is_builtin(target)) {
    lib = includes_only(g);
    Subject x;
    x.name = target;
    if (is_hypermagma_builtin(target)) {
      x.hyper = lib.hypermagma(target);
      Hyperpair hp = build_hyperpair(*x.hyper);
      x.pair = hp.to_pair();
      x.order = hp.subset_order();
      x.module = hp.to_module();
      x.monoid = hp.tangible_monoid;
      out.input(lib, target, "hypermagma");
    } else {
      x.module = lib.module(target);
      x.monoid = x.module->left_action().monoid;
      x.pair = classical_pair(*x.module);
      out.input(lib, target, "module");
    }
    s.push_back(std::move(x));
    return s;
  }
  lib = io::load_library(target, include_paths(g));
  auto want = [&](const std::string& n) { return only.empty() || only == n; };
  for (const auto& [n, m] : lib.monoids)
    if (want(n)) {
      s.push_back({n, m, {}, {}, {}, {}});
      out.input(lib, n, "monoid");
    }
  for (const auto& [n, e] : lib.modules)
    if (want(n)) {
      s.push_back({n, {}, e.module, {}, {}, {}});
      out.input(lib, n, "module");
    }
  for (const auto& [n, e] : lib.pairs)
    if (want(n)) {
      s.push_back({n, {}, {}, e.pair, {}, {}});
      out.input(lib, n, "pair");
    }
  for (const auto& [n, e] : lib.surpassing)
    if (want(n)) {
      s.push_back({n, {}, {}, lib.pair(e.pair), e.relation, {}});
      out.input(lib, n, "surpassing");
    }
  for (const auto& [n, h] : lib.hypermagmas)
    if (want(n)) {
      Hyperpair hp = build_hyperpair(h);
      s.push_back({n, {}, {}, hp.to_pair(), hp.subset_order(), h});
      out.input(lib, n, "hypermagma");
    }
  if (!only.empty() && s.empty()) throw InputError("no structure named '" + only + "' in " + target);
  if (s.empty()) throw InputError(target + " defines no checkable structure");
  return s;
}

Report property_n_report(const Pair& p) {
  auto r = find_property_N(p);
  Report rep = r.report;
  if (r.witnesses.empty()) {
    rep.violations.push_back({"property_N", {}, 1, "no tangible pseudo-negative"});
  }
  for (const auto& w : r.witnesses)
    rep.notes.push_back("1† = " + p.module.carrier[w.pseudo_neg_one] + ", e = " + p.module.carrier[w.e]);
  return rep;
}

Report circ_report(const Pair& p) {
  auto r = find_property_N(p);
  Report rep;
  if (r.witnesses.empty()) rep.violations.push_back({"property_N", {}, 1, "no tangible pseudo-negative"});
  for (const auto& w : r.witnesses) rep.merge(check_circ_distributive(p, w), "1†=" + p.module.carrier[w.pseudo_neg_one]);
  return rep;
}

Report hypersemigroup_report(const Subject& x) {
  Report rep = check_hypersemigroup(*x.hyper);
  Report hg = check_hypergroup(*x.hyper);
  rep.facts["hypergroup"] = hg.ok();
  if (hg.facts.count("uniquely_negated")) rep.facts["uniquely_negated"] = hg.facts.at("uniquely_negated");
  if (x.hyper->mul) rep.facts["hyperfield"] = check_hyperfield(*x.hyper).ok();
  if (x.pair) rep.facts["property_N"] = !find_property_N(*x.pair).witnesses.empty();
  return rep;
}

bool run_suite(const std::string& suite, const Subject& x, Output& out) {
  if (suite == "monoid" && x.monoid) {
    out.check(x.name, suite, check_monoid(*x.monoid));
  } else if (suite == "module" && x.module) {
    out.check(x.name, suite, check_module(*x.module));
  } else if (suite == "pair" && x.pair) {
    out.check(x.name, suite, check_pair(*x.pair));
  } else if (suite == "surpassing" && x.pair && x.order) {
    out.check(x.name, suite, check_surpassing(*x.pair, *x.order));
  } else if (suite == "hypersemigroup" && x.hyper) {
    out.check(x.name, suite, hypersemigroup_report(x));
  } else if (suite == "hypergroup" && x.hyper) {
    out.check(x.name, suite, check_hypergroup(*x.hyper));
  } else if (suite == "hyperfield" && x.hyper) {
    out.check(x.name, suite, check_hyperfield(*x.hyper));
  } else if (suite == "propertyN" && x.pair) {
    out.check(x.name, suite, property_n_report(*x.pair));
  } else if (suite == "circ-distributive" && x.pair) {
    out.check(x.name, suite, circ_report(*x.pair));
  } else {
    return false;
  }
  return true;
}

// Structural axioms decide the verdict; classification suites are reported as facts.
bool run_all(const Subject& x, Output& out) {
  bool any = false;
  for (const char* s : {"monoid", "module", "pair", "surpassing", "hypersemigroup"}) any |= run_suite(s, x, out);
  if (x.pair) {
    Report facts;
    auto pn = find_property_N(*x.pair);
    facts.facts["property_N"] = !pn.witnesses.empty();
    bool circ = !pn.witnesses.empty();
    for (const auto& w : pn.witnesses) circ = circ && check_circ_distributive(*x.pair, w).ok();
    facts.facts["circ_distributive"] = circ;
    if (x.hyper) {
      facts.facts["hypergroup"] = check_hypergroup(*x.hyper).ok();
      if (x.hyper->mul) facts.facts["hyperfield"] = check_hyperfield(*x.hyper).ok();
    }
    out.check(x.name, "classification", facts, Verdict::pass);
  }
  return any;
}

int cmd_check(const Globals& g, const std::string& target, const std::string& suite, const std::string& only) {
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw InputError("unknown suite '" + suite + "'");
  Output out(g);
  io::Library lib;
  auto subs = subjects(target, only, g, lib, out);
  bool any = false;
  for (const auto& x : subs) any |= suite == "all" ? run_all(x, out) : run_suite(suite, x, out);
  if (!any) throw InputError("suite '" + suite + "' does not apply to " + target);
  return out.finish(std::cout);
}

// ------------------------------------------------------------------ quotient

int cmd_quotient(const Globals& g, const std::string& target, const std::string& sub, const std::string& name,
                 const std::string& out_path) {
  io::Library lib = includes_only(g);
  if (!is_builtin(target)) lib = io::load_library(target, include_paths(g));
  TModule m = is_builtin(target) ? lib.module(target) : lib.module(lib.modules.size() == 1 ? lib.modules.begin()->first : name);
  Subgroup gs = subgroup(m.left_action().monoid, split_labels(sub));
  ResidueHypermodule r = residue(m, gs);
  Document file = io::structure_file("hypermagma", name.empty() ? "quotient" : name, io::to_document(r.hypermagma));
  io::Format fmt = structure_format(g, out_path);
  if (out_path.empty()) {
    std::cout << io::emit(file, fmt);
    return 0;
  }
  io::write_text(out_path, io::emit(file, fmt));
  Output out(g);
  out.input(lib, target, "module");
  out.result()["classes"] = Document::array();
  for (const auto& c : r.classes) {
    Document cls = Document::array();
    for (int x : c) cls.push_back(m.carrier[x]);
    out.result()["classes"].push_back(cls);
  }
  out.result()["written"] = out_path;
  out.result()["fingerprint"] = io::fingerprint(io::to_document(r.hypermagma));
  if (m.unit) {
    try {
      auto rc = residue_constants(m, gs, r);
      out.result()["e"] = subset_label(rc.e, r.hypermagma.carrier);
      out.check(target, "residue_constants", rc.report);
    } catch (const InputError& e) {
      out.result()["residue_constants"] = e.what();
    }
  }
  return out.finish(std::cout);
}

// ------------------------------------------------------------------ tensor

int cmd_tensor(const Globals& g, const std::string& a, const std::string& b, const std::string& over, bool nr,
               bool negation, const std::string& free_base, bool oracle) {
  io::Library lib = includes_only(g);
  Output out(g);
  if (nr) {
    Hypermagma h1 = lib.hypermagma(a), h2 = lib.hypermagma(b);
    out.input(lib, a, "hypermagma");
    out.input(lib, b, "hypermagma");
    NRTensor t = nr_tensor(h1, h2);
    Hypermagma h = t.hypermagma();
    for (int i = 0; i < t.size(); ++i) h.carrier[i] = t.label(i);
    out.result()["nr_tensor"] = io::to_document(h);
    Report semi = check_hypersemigroup(h);
    out.check("nr", "hypersemigroup", semi, Verdict::pass);
    return out.finish(std::cout);
  }
  TModule m1 = lib.module(a), m2 = lib.module(b);
  out.input(lib, a, "module");
  out.input(lib, b, "module");
  FiniteMonoid t = over.empty() ? m2.left_action().monoid : lib.monoid(over);
  TensorOptions opt;
  opt.bound = g.bound;
  opt.negation = negation;
  Tensor tt = build_tensor(m1, m2, t, opt);
  Document& res = out.result();
  res["classes"] = tt.class_count();
  res["saturated"] = tt.saturated();
  res["saturation"] = tt.closure.saturation_detail;
  res["labels"] = tt.class_labels();
  if (!tt.saturated()) {
    out.merge(Verdict::undetermined);
    return out.finish(std::cout);
  }
  Report pr;
  Pair tp = tensor_pair(lib.pair(a), lib.pair(b), tt, &pr);
  Document zs = Document::array();
  for (int c = 0; c < tt.class_count(); ++c)
    if (tp.zero_set[c]) zs.push_back(tt.class_labels()[c]);
  res["zero_family"] = zs;
  out.check("tensor", "pair", pr);
  if (oracle) out.check("tensor", "universal_property", universal_property_oracle(tt, default_oracle_targets(), g.cap));
  if (!free_base.empty()) {
    FreeCodec codec = free_normal_form(m1, m2, label_indices(m2.carrier, free_base));
    res["codec_vectors"] = codec.vector_count();
    out.check("tensor", "free_normal_form", compare_codec(tt, codec));
  }
  return out.finish(std::cout);
}

// ------------------------------------------------------------------ morphism

Document flags_doc(const MorphismFlags& f) {
  Document d = Document::object();
  d["multiplicative"] = f.multiplicative;
  d["homomorphism"] = f.homomorphism;
  d["order_preserving"] = f.order_preserving;
  d["colax"] = f.colax;
  d["lax"] = f.lax;
  d["paired"] = f.paired;
  d["weak"] = f.weak;
  return d;
}

int cmd_classify(const Globals& g, const std::string& file, std::string from, std::string to,
                 const std::string& only) {
  io::Library lib = includes_only(g);
  std::vector<int> f;
  auto ext = fs::path(file).extension();
  if (ext == ".toml" || ext == ".json") {
    lib = io::load_library(file, include_paths(g));
    if (lib.maps.empty()) throw InputError(file + " defines no map");
    if (only.empty() && lib.maps.size() > 1) throw InputError(file + " defines several maps; pick one with --name");
    const auto& e = lib.map(only.empty() ? lib.maps.begin()->first : only);
    if (!from.empty() || !to.empty()) throw InputError("--from/--to come from the map section of " + file);
    from = e.from;
    to = e.to;
    f = e.map;
  } else {
    if (from.empty() || to.empty()) throw InputError("a plain map file needs --from and --to");
    auto src = lib.ordered_pair(from), dst = lib.ordered_pair(to);
    std::ifstream in(file);
    if (!in) throw InputError("cannot read " + file);
    f.assign(src.size(), -1);
    std::string line;
    std::string name;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::string n;
      auto [x, y] = io::parse_map_rule(line, src.module().carrier, dst.module().carrier, &n);
      if (!name.empty() && n != name) throw InputError("map lines name both '" + name + "' and '" + n + "'");
      name = n;
      if (f[x] >= 0) throw InputError("value of '" + src.module().carrier[x] + "' given twice");
      f[x] = y;
    }
    for (int x = 0; x < src.size(); ++x)
      if (f[x] < 0) throw InputError("no value for '" + src.module().carrier[x] + "'");
  }
  auto src = lib.ordered_pair(from), dst = lib.ordered_pair(to);
  Output out(g);
  out.input(lib, from, "pair");
  out.input(lib, to, "pair");
  auto table = classify(f, src, dst);
  auto chain = flag_chain(table, dst);
  out.result()["flags"] = flags_doc(table.flags);
  out.result()["label"] = flags_label(table.flags);
  Document c = Document::object();
  c["hom_not_colax"] = chain.hom_not_colax;
  c["colax_not_weak"] = chain.colax_not_weak;
  c["hom_not_weak"] = chain.hom_not_weak;
  out.result()["chain_exceptions"] = c;
  // Flags are findings about the map; a property that fails is not a command failure.
  out.check("map", "classify", table.report, Verdict::pass);
  return out.finish(std::cout);
}

int cmd_chain(const Globals& g, const std::string& from, const std::string& to) {
  io::Library lib = includes_only(g);
  Output out(g);
  out.input(lib, from, "pair");
  out.input(lib, to, "pair");
  auto s = flag_chain_report(lib.ordered_pair(from), lib.ordered_pair(to), g.cap);
  out.result()["maps"] = s.maps;
  out.result()["homomorphisms"] = s.homomorphisms;
  out.result()["colax"] = s.colax;
  out.result()["weak"] = s.weak;
  out.result()["exceptions"] = s.exceptions;
  out.check("chain", "flag_chain", s.report);
  return out.finish(std::cout);
}

int cmd_adjoint(const Globals& g, const std::string& a, const std::string& b, const std::string& c,
                const std::string& mode, const std::string& free_base, bool canonical) {
  io::Library lib = includes_only(g);
  Output out(g);
  for (const auto& r : {a, b, c}) out.input(lib, r, "pair");
  auto m1 = lib.ordered_pair(a), m2 = lib.ordered_pair(b), m3 = lib.ordered_pair(c);
  if (canonical) {
    TensorOptions opt;
    opt.bound = g.bound;
    auto r = adjoint_canonical(m1, m2, m3, opt, g.cap);
    out.result()["phi_inputs"] = r.phi_inputs;
    out.result()["psi_inputs"] = r.psi_inputs;
    out.result()["psi_colax"] = r.psi_colax;
    out.check("adjoint", "canonical", r.report);
  } else if (!free_base.empty()) {
    auto r = adjoint_section(m1, m2, label_indices(m2.module().carrier, free_base), m3, g.cap);
    out.result()["maps"] = r.maps;
    out.result()["identity"] = r.identity;
    out.result()["psi_colax"] = r.psi_colax;
    out.check("adjoint", "section", r.report);
  } else {
    AdjointMode m;
    if (mode == "weak") {
      m = AdjointMode::weak;
    } else if (mode == "colax") {
      m = AdjointMode::colax;
    } else {
      throw InputError("unknown adjoint mode '" + mode + "'");
    }
    auto r = adjoint_wmor(m1, m2, m3, m, g.cap);
    out.result()["lhs"] = r.lhs;
    out.result()["rhs"] = r.rhs;
    out.result()["inner"] = r.inner;
    out.check("adjoint", mode, r.report);
  }
  return out.finish(std::cout);
}

// ------------------------------------------------------------------ census

int cmd_census(const Globals& g, int order, const std::string& suite, const std::string& out_path, int workers) {
  Suite s = parse_suite(suite);
  if (order < 1 || order > 4) throw InputError("census order must be between 1 and 4");
  double candidates = census_candidates(order);
  if (candidates > g.cap) throw CapExceeded("census candidates exceed --cap", candidates, g.cap);
  auto r = census(order, s, workers);
  std::string lines;
  for (const auto& h : r.tables) lines += io::to_document(h).dump() + "\n";
  if (out_path.empty()) {
    std::cout << lines;
    return 0;
  }
  io::write_text(out_path, lines);
  Output out(g);
  out.result()["order"] = order;
  out.result()["suite"] = suite;
  out.result()["enumerated"] = r.enumerated;
  out.result()["passing"] = r.passing_before_dedup;
  out.result()["tables"] = r.tables.size();
  out.result()["written"] = out_path;
  out.result()["fingerprint"] = io::fingerprint(Document(lines));
  return out.finish(std::cout);
}

// ------------------------------------------------------------------ repro

std::string empty_as_null_set(const std::string& s) { return s == "{}" ? "∅" : s; }

int repro_nar1(Output& out) {
  NRWitness w = nr_assoc_counterexample();
  const NRTensor& t = w.tensor;
  auto symbol = [&](int x) {
    int i = x / t.h2.size(), j = x % t.h2.size();
    std::string a = i == w.v1 ? "v₁" : i == w.v2 ? "v₂" : t.h1.carrier[i];
    std::string b = j == w.w1 ? "w₁" : j == w.w2 ? "w₂" : t.h2.carrier[j];
    return a + "⊗" + b;
  };
  auto symbolic = [&](Subset s) {
    if (!s) return std::string("∅");
    std::string o = "{";
    bool first = true;
    for (int x : members(s)) {
      o += (first ? "" : ",") + symbol(x);
      first = false;
    }
    return o + "}";
  };
  Document& r = out.result();
  r["fixture"] = "tropical_chain(2)";
  r["v1"] = t.h1.carrier[w.v1];
  r["v2"] = t.h1.carrier[w.v2];
  r["w1"] = t.h2.carrier[w.w1];
  r["w2"] = t.h2.carrier[w.w2];
  r["first_bracketing"] = "((v₁⊗w₁)⊞(v₁⊗w₂))⊞((v₂⊗w₁)⊞(v₂⊗w₂))";
  r["second_bracketing"] = "(v₁⊗w₁)⊞(((v₁⊗w₂)⊞(v₂⊗w₁))⊞(v₂⊗w₂))";
  r["first"] = empty_as_null_set(t.subset(w.first));
  r["second"] = empty_as_null_set(t.subset(w.second));
  r["symbolic"] = "(" + symbolic(w.first) + ", " + symbolic(w.second) + ")";
  r["disagree"] = w.first != w.second;
  Report rep;
  rep.checked.push_back("bracketings_disagree");
  if (w.first == w.second) rep.violations.push_back({"bracketings_disagree", {}, 1, ""});
  out.check("nar1", "nonassociativity", rep);
  return 0;
}

int repro_krasner(Output& out) {
  TModule f3 = builtin_module("F3");
  auto gs = subgroup(f3.left_action().monoid, {"1", "2"});
  auto r = residue(f3, gs);
  const Hypermagma& h = r.hypermagma;
  Document rules = Document::array();
  for (int a = 0; a < h.size(); ++a)
    for (int b = 0; b < h.size(); ++b) rules.push_back(io::hyper_rule(h, a, b));
  out.result()["table"] = rules;
  int one = -1;
  for (int c = 0; c < h.size(); ++c)
    if (std::find(r.classes[c].begin(), r.classes[c].end(), f3.index_of("1")) != r.classes[c].end()) one = c;
  int zero = r.projection[f3.zero];
  Report rep;
  rep.checked.push_back("one_plus_one");
  Subset expect = singleton(zero) | singleton(one);
  out.result()["one_plus_one"] = subset_label(h.add(one, one), h.carrier);
  if (h.add(one, one) != expect) rep.violations.push_back({"one_plus_one", {one, one}, 1, ""});
  Hypermagma k = builtin_hypermagma("krasner");
  rep.checked.push_back("isomorphic_to_krasner");
  if (canonical_form(h).table != canonical_form(k).table) rep.violations.push_back({"isomorphic_to_krasner", {}, 1, ""});
  out.check("F3/{1,2}", "table", rep);
  out.check("F3/{1,2}", "hyperfield", check_hyperfield(h));
  return 0;
}

int repro_sign_e(Output& out) {
  Hyperpair hp = build_hyperpair(builtin_hypermagma("sign"));
  Pair p = hp.to_pair();
  auto pn = find_property_N(p);
  Report rep = pn.report;
  rep.checked.push_back("sign_e");
  Subset full = full_set(3);
  bool found = false;
  for (const auto& w : pn.witnesses) {
    out.result()["pseudo_negative_one"] = p.module.carrier[w.pseudo_neg_one];
    out.result()["e"] = p.module.carrier[w.e];
    found = found || hp.family[w.e] == full;
  }
  if (!found) rep.violations.push_back({"sign_e", {}, 1, "e is not {0,1,-1}"});
  out.check("sign", "property_N", rep);

  TModule f7 = builtin_module("F7");
  auto gs = subgroup(f7.left_action().monoid, {"1", "2", "4"});
  auto r = residue(f7, gs);
  auto rc = residue_constants(f7, gs, r);
  out.result()["F7/{1,2,4}"]["e"] = subset_label(rc.e, r.hypermagma.carrier);
  out.result()["F7/{1,2,4}"]["ee"] = subset_label(rc.ee, r.hypermagma.carrier);
  out.result()["F7/{1,2,4}"]["e+e"] = subset_label(rc.e_plus_e, r.hypermagma.carrier);
  out.check("F7/{1,2,4}", "residue_constants", rc.report);
  return 0;
}

int repro_recombine(const Globals& g, Output& out) {
  TModule b2 = boolean_power(2);
  TensorOptions opt;
  opt.bound = g.bound;
  Tensor t = build_tensor(b2, b2, opt);
  auto c = recombination_chain(t, b2.index_of("10"), b2.index_of("01"));
  out.result()["fixture"] = "B^2 ⊗ B^2 over the boolean monoid";
  out.result()["v1"] = b2.carrier[c.v1];
  out.result()["v2"] = b2.carrier[c.v2];
  out.result()["v3"] = b2.carrier[c.v3];
  out.result()["chain"] = c.steps;
  out.result()["classes"] = c.classes;
  Report rep = c.report;
  rep.checked.push_back("halves_not_simple");
  if (c.report.facts.at("first_half_simple") || c.report.facts.at("second_half_simple"))
    rep.violations.push_back({"halves_not_simple", {}, 1, ""});
  out.check("recombine", "chain", rep, t.saturated() ? std::nullopt : std::optional(Verdict::undetermined));
  return 0;
}

int repro_residue_tensor(const Globals& g, Output& out) {
  TModule f3 = builtin_module("F3");
  auto gs = subgroup(f3.left_action().monoid, {"1", "2"});
  TensorOptions opt;
  opt.bound = g.bound_given ? g.bound : 3;
  auto r = residue_tensor_iso(f3, gs, f3, gs, opt);
  out.result()["bound"] = opt.bound;
  out.result()["lhs_classes"] = r.lhs.class_count();
  out.result()["rhs_size"] = r.rhs.size();
  out.result()["map"] = r.map;
  out.check("F3/{1,2} ⊗ F3/{1,2}", "residue_tensor_iso", r.report,
            r.undetermined ? std::optional(Verdict::undetermined) : std::nullopt);
  return 0;
}

int cmd_repro(const Globals& g, const std::string& which) {
  Output out(g);
  out.result()["case"] = which;
  if (which == "nar1") {
    repro_nar1(out);
  } else if (which == "krasner") {
    repro_krasner(out);
  } else if (which == "sign-e") {
    repro_sign_e(out);
  } else if (which == "recombine") {
    repro_recombine(g, out);
  } else if (which == "residue-tensor") {
    repro_residue_tensor(g, out);
  } else {
    throw InputError("unknown repro case '" + which + "'");
  }
  return out.finish(std::cout);
}

// ------------------------------------------------------------------ emit

int cmd_emit(const Globals& g, const std::string& target, const std::string& out_path) {
  Document doc;
  if (is_builtin(target)) {
    io::Library lib = includes_only(g);
    std::string name = safe_name(target.substr(io::kBuiltinScheme.size()));
    if (is_hypermagma_builtin(target)) {
      doc = io::structure_file("hypermagma", name, io::to_document(lib.hypermagma(target)));
    } else {
      TModule m = lib.module(target);
      io::Library one;
      one.monoids["T"] = m.left_action().monoid;
      io::ModuleEntry e{m, "T", ""};
      if (m.right) {
        if (m.right->monoid == m.left_action().monoid) {
          e.right_over = "T";
        } else {
          one.monoids["T_right"] = m.right->monoid;
          e.right_over = "T_right";
        }
      }
      one.modules[name] = e;
      doc = one.document();
    }
  } else {
    doc = io::load_library(target, include_paths(g)).document();
  }
  std::string text = io::emit(doc, structure_format(g, out_path));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    io::write_text(out_path, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  for (int i = 0; i < argc; ++i) g.command += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Finite hyperalgebra workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--bound", g.bound, "term length bound L")->check(CLI::Range(1, 64))->each([&](const std::string&) {
    g.bound_given = true;
  });
  app.add_option("--cap", g.cap, "enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "structure output format")
      ->check(CLI::IsMember({"json", "toml"}))
      ->each([&](const std::string&) { g.format_given = true; });
  app.add_option("--include", g.includes, "structure file made available to references")->check(CLI::ExistingFile);

  std::string target, suite = "all", name, out_path, subgroup_labels, over, free_base, mode = "weak";
  std::string a, b, c, from, to;
  bool nr = false, negation = false, oracle = false, canonical = false;
  int order = 2, workers = 1;

  auto* check = app.add_subcommand("check", "run an axiom suite");
  check->add_option("target", target, "structure file or builtin:URI")->required();
  check->add_option("--suite", suite, "suite")->check(CLI::IsMember(kSuites));
  check->add_option("--name", name, "only this structure of the file");

  auto* quotient = app.add_subcommand("quotient", "residue hypermodule M/G");
  quotient->add_option("target", target, "module file or builtin:URI")->required();
  quotient->add_option("--subgroup", subgroup_labels, "comma separated monoid elements")->required();
  quotient->add_option("--name", name, "name of the emitted hypermagma");
  quotient->add_option("--out", out_path, "write the structure here and print a report");

  auto* tensor = app.add_subcommand("tensor", "tensor product by congruence closure");
  tensor->add_option("m1", a)->required();
  tensor->add_option("m2", b)->required();
  tensor->add_option("--over", over, "acting monoid");
  tensor->add_flag("--nr", nr, "NR tensor of two hypermagmas (mixed simple sums are empty)");
  tensor->add_flag("--negation", negation, "add the negation rule");
  tensor->add_option("--free-base", free_base, "comma separated base of m2");
  tensor->add_flag("--oracle", oracle, "run the universal-property oracle");

  auto* morphism = app.add_subcommand("morphism", "morphism classification and adjunctions");
  morphism->require_subcommand(1);
  morphism->fallthrough();
  auto* classify_cmd = morphism->add_subcommand("classify", "flags of one map");
  classify_cmd->add_option("map-file", target)->required();
  classify_cmd->add_option("--from", from);
  classify_cmd->add_option("--to", to);
  classify_cmd->add_option("--name", name, "map section to use");
  auto* chain_cmd = morphism->add_subcommand("chain", "flag chain over every multiplicative map");
  chain_cmd->add_option("--from", from)->required();
  chain_cmd->add_option("--to", to)->required();
  auto* adjoint_cmd = morphism->add_subcommand("adjoint", "adjoint correspondences");
  adjoint_cmd->add_option("--m1", a)->required();
  adjoint_cmd->add_option("--m2", b)->required();
  adjoint_cmd->add_option("--m3", c)->required();
  adjoint_cmd->add_option("--mode", mode)->check(CLI::IsMember({"weak", "colax"}));
  adjoint_cmd->add_option("--free-base", free_base, "comma separated base of m2");
  adjoint_cmd->add_flag("--canonical", canonical, "maps out of the tensor and the meet formula");

  auto* census_cmd = app.add_subcommand("census", "enumerate commutative hypermagmas with hyperzero");
  census_cmd->add_option("--order", order)->check(CLI::Range(1, 4));
  census_cmd->add_option("--suite", suite)->check(CLI::IsMember({"hypersemigroup", "hypergroup"}));
  census_cmd->add_option("--out", out_path, "line-delimited JSON output");
  census_cmd->add_option("--workers", workers)->check(CLI::Range(1, 64));

  auto* repro = app.add_subcommand("repro", "reproduce a worked computation");
  repro->add_option("case", target)->required()->check(
      CLI::IsMember({"nar1", "krasner", "sign-e", "recombine", "residue-tensor"}));

  auto* emit_cmd = app.add_subcommand("emit", "canonical re-emission");
  emit_cmd->add_option("target", target)->required();
  emit_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  if (check->parsed() && suite.empty()) suite = "all";

  try {
    if (check->parsed()) return cmd_check(g, target, suite, name);
    if (quotient->parsed()) return cmd_quotient(g, target, subgroup_labels, name, out_path);
    if (tensor->parsed()) return cmd_tensor(g, a, b, over, nr, negation, free_base, oracle);
    if (classify_cmd->parsed()) return cmd_classify(g, target, from, to, name);
    if (chain_cmd->parsed()) return cmd_chain(g, from, to);
    if (adjoint_cmd->parsed()) return cmd_adjoint(g, a, b, c, mode, free_base, canonical);
    if (census_cmd->parsed()) return cmd_census(g, order, suite == "all" ? "hypergroup" : suite, out_path, workers);
    if (repro->parsed()) return cmd_repro(g, target);
    if (emit_cmd->parsed()) return cmd_emit(g, target, out_path);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 3;
  } catch (const CapExceeded& e) {
    std::cerr << "cap: " << e.what() << " (" << e.candidates() << " > " << e.cap() << ")\n";
    return exit_code(Verdict::cap);
  } catch (const ResourceError& e) {
    std::cerr << "cap: " << e.what() << " (largest feasible " << e.largest_feasible() << ")\n";
    return exit_code(Verdict::cap);
  } catch (const Undetermined& e) {
    std::cerr << "undetermined at bound " << e.bound() << ": " << e.what() << '\n';
    return exit_code(Verdict::undetermined);
  }
  return 3;
}
