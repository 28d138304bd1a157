#include "hyperalg/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hyperalg/fixtures.hpp"

namespace hyperalg::io {

namespace {

enum Kind { kMonoid, kModule, kPair, kSurpassing, kHypermagma, kMap };

constexpr const char* kSections[] = {"monoid", "module", "pair", "surpassing", "hypermagma", "map"};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string context(std::string_view section, std::string_view name) {
  return std::string(section) + " '" + std::string(name) + "'";
}

const Document& field(const Document& d, const char* key, const std::string& ctx) {
  if (!d.is_object() || !d.contains(key)) throw InputError(ctx + ": missing '" + key + "'");
  return d.at(key);
}

std::string string_of(const Document& v, const std::string& ctx) {
  if (!v.is_string()) throw InputError(ctx + ": expected a string, got " + v.dump());
  return v.get<std::string>();
}

const Document& array_of(const Document& v, const std::string& ctx) {
  if (!v.is_array()) throw InputError(ctx + ": expected an array");
  return v;
}

void only_keys(const Document& d, std::initializer_list<const char*> keys, const std::string& ctx) {
  if (!d.is_object()) throw InputError(ctx + ": expected a table");
  for (auto it = d.begin(); it != d.end(); ++it)
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
      throw InputError(ctx + ": unknown key '" + it.key() + "'");
}

std::vector<std::string> labels_of(const Document& v, const std::string& ctx) {
  std::vector<std::string> out;
  for (const auto& x : array_of(v, ctx)) out.push_back(string_of(x, ctx));
  if (out.empty()) throw InputError(ctx + ": empty carrier");
  auto sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError(ctx + ": duplicate label");
  return out;
}

int index_of(const std::vector<std::string>& labels, const Document& v, const std::string& ctx) {
  std::string s = string_of(v, ctx);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return static_cast<int>(i);
  throw InputError(ctx + ": unknown label '" + s + "'");
}

// rows x cols table of labels; "" marks -1 when allowed.
Table table_of(const Document& v, int rows, int cols, const std::vector<std::string>& labels, const std::string& ctx,
               bool allow_undefined = false) {
  const auto& arr = array_of(v, ctx);
  if (static_cast<int>(arr.size()) != rows) throw InputError(ctx + ": expected " + std::to_string(rows) + " rows");
  Table t(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& row = array_of(arr[i], ctx);
    if (static_cast<int>(row.size()) != cols)
      throw InputError(ctx + ": row " + std::to_string(i) + " needs " + std::to_string(cols) + " entries");
    for (int j = 0; j < cols; ++j) {
      if (allow_undefined && row[j].is_string() && row[j].get<std::string>().empty()) {
        t(i, j) = -1;
        continue;
      }
      t(i, j) = index_of(labels, row[j], ctx);
    }
  }
  return t;
}

Document table_doc(const Table& t, const std::vector<std::string>& labels) {
  Document rows = Document::array();
  for (int i = 0; i < t.rows; ++i) {
    Document row = Document::array();
    for (int j = 0; j < t.cols; ++j) row.push_back(t(i, j) < 0 ? std::string() : labels[t(i, j)]);
    rows.push_back(std::move(row));
  }
  return rows;
}

Document labels_doc(const std::vector<std::string>& labels) {
  Document d = Document::array();
  for (const auto& l : labels) d.push_back(l);
  return d;
}

bool is_builtin(std::string_view ref) { return ref.starts_with(kBuiltinScheme); }
std::string_view builtin_name(std::string_view ref) { return ref.substr(kBuiltinScheme.size()); }

bool hypermagma_builtin(std::string_view name) {
  auto base = name.substr(0, name.find('('));
  for (const auto& n : builtin_hypermagma_names())
    if (n == base) return true;
  return false;
}

Document module_body(const TModule& m, const Document& over, const Document& right_over) {
  Document d = Document::object();
  if (m.left) d["over"] = over;
  d["carrier"] = labels_doc(m.carrier);
  d["add"] = table_doc(m.add, m.carrier);
  d["zero"] = m.carrier[m.zero];
  if (m.left) d["action"] = table_doc(m.left->table, m.carrier);
  if (m.right) {
    d["right_over"] = right_over;
    d["right_action"] = table_doc(m.right->table, m.carrier);
  }
  if (m.unit) d["unit"] = m.carrier[*m.unit];
  if (m.mul) d["mul"] = table_doc(*m.mul, m.carrier);
  return d;
}

Document pair_body(const Pair& p, const Document& module) {
  Document d = Document::object();
  d["module"] = module;
  Document zs = Document::array();
  for (int i = 0; i < p.size(); ++i)
    if (p.zero_set[i]) zs.push_back(p.module.carrier[i]);
  d["zero_set"] = zs;
  if (p.embedding) {
    Document e = Document::array();
    for (int v : *p.embedding) e.push_back(p.module.carrier[v]);
    d["embedding"] = e;
  }
  if (p.product) d["product"] = table_doc(*p.product, p.module.carrier);
  return d;
}

Document relation_body(const SurpassingRelation& s, const std::vector<std::string>& labels, const Document& pair) {
  Document d = Document::object();
  d["pair"] = pair;
  Document rel = Document::array();
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      if (i != j && s(i, j)) rel.push_back(Document::array({labels[i], labels[j]}));
  d["relation"] = rel;
  return d;
}

Document map_body(const MapEntry& m, std::string_view name, const std::vector<std::string>& from,
                  const std::vector<std::string>& to) {
  Document d = Document::object();
  d["from"] = m.from;
  d["to"] = m.to;
  Document rules = Document::array();
  for (std::size_t i = 0; i < m.map.size(); ++i)
    rules.push_back(std::string(name) + "(" + from[i] + ") = " + to[m.map[i]]);
  d["rules"] = rules;
  return d;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "toml") return Format::toml;
  throw InputError("unknown format '" + std::string(name) + "'");
}

Format format_of(const std::filesystem::path& path) {
  return path.extension() == ".toml" ? Format::toml : Format::json;
}

std::string emit_json(const Document& doc) { return doc.dump(2) + "\n"; }

Document parse(std::string_view text, Format format) {
  if (format == Format::toml) return parse_toml(text);
  try {
    return Document::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("json: ") + e.what());
  }
}

std::string emit(const Document& doc, Format format) {
  return format == Format::toml ? emit_toml(doc) : emit_json(doc);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fingerprint(const Document& doc) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(doc.dump())));
  return buf;
}

std::pair<int, int> parse_hyper_rule(std::string_view line, Hypermagma& h) {
  const std::string ctx = "rule '" + std::string(line) + "'";
  auto eq = line.find('=');
  if (eq == std::string_view::npos) throw InputError(ctx + ": missing '='");
  std::string lhs = trim(line.substr(0, eq));
  std::string rhs = trim(line.substr(eq + 1));
  int a = -1, b = -1, matches = 0;
  for (std::size_t p = lhs.find('+'); p != std::string::npos; p = lhs.find('+', p + 1)) {
    std::string l = trim(std::string_view(lhs).substr(0, p)), r = trim(std::string_view(lhs).substr(p + 1));
    auto li = std::find(h.carrier.begin(), h.carrier.end(), l);
    auto ri = std::find(h.carrier.begin(), h.carrier.end(), r);
    if (li != h.carrier.end() && ri != h.carrier.end()) {
      a = static_cast<int>(li - h.carrier.begin());
      b = static_cast<int>(ri - h.carrier.begin());
      ++matches;
    }
  }
  if (matches != 1) throw InputError(ctx + (matches ? ": ambiguous left side" : ": left side is not 'a+b'"));
  if (rhs.size() < 2 || rhs.front() != '{' || rhs.back() != '}') throw InputError(ctx + ": right side is not '{...}'");
  Subset s = 0;
  std::string body = rhs.substr(1, rhs.size() - 2);
  if (!trim(body).empty()) {
    std::size_t start = 0;
    for (;;) {
      auto comma = body.find(',', start);
      std::string label = trim(std::string_view(body).substr(start, comma - start));
      auto it = std::find(h.carrier.begin(), h.carrier.end(), label);
      if (it == h.carrier.end()) throw InputError(ctx + ": unknown label '" + label + "'");
      s |= singleton(static_cast<int>(it - h.carrier.begin()));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  h.at(a, b) = s;
  return {a, b};
}

std::string hyper_rule(const Hypermagma& h, int a, int b) {
  return h.carrier[a] + "+" + h.carrier[b] + " = " + subset_label(h.add(a, b), h.carrier);
}

std::pair<int, int> parse_map_rule(std::string_view line, const std::vector<std::string>& from,
                                   const std::vector<std::string>& to, std::string* name) {
  const std::string ctx = "map line '" + std::string(line) + "'";
  auto eq = line.rfind('=');
  auto open = line.find('(');
  auto close = eq == std::string_view::npos ? eq : line.rfind(')', eq);
  if (eq == std::string_view::npos || open == std::string_view::npos || close == std::string_view::npos ||
      close < open)
    throw InputError(ctx + ": expected 'f(a) = b'");
  if (!trim(line.substr(close + 1, eq - close - 1)).empty()) throw InputError(ctx + ": expected 'f(a) = b'");
  if (name) *name = trim(line.substr(0, open));
  std::string a = trim(line.substr(open + 1, close - open - 1));
  std::string b = trim(line.substr(eq + 1));
  auto ai = std::find(from.begin(), from.end(), a);
  auto bi = std::find(to.begin(), to.end(), b);
  if (ai == from.end()) throw InputError(ctx + ": unknown source label '" + a + "'");
  if (bi == to.end()) throw InputError(ctx + ": unknown target label '" + b + "'");
  return {static_cast<int>(ai - from.begin()), static_cast<int>(bi - to.begin())};
}

Document to_document(const FiniteMonoid& m) {
  Document d = Document::object();
  d["elements"] = labels_doc(m.elements);
  d["op"] = table_doc(m.op, m.elements);
  d["identity"] = m.elements[m.identity];
  if (m.absorbing) d["absorbing"] = m.elements[*m.absorbing];
  return d;
}

Document to_document(const Hypermagma& h) {
  Document d = Document::object();
  d["carrier"] = labels_doc(h.carrier);
  if (h.zero) d["zero"] = h.carrier[*h.zero];
  Document rules = Document::array();
  for (int a = 0; a < h.size(); ++a)
    for (int b = 0; b < h.size(); ++b)
      if (h.add(a, b)) rules.push_back(hyper_rule(h, a, b));
  d["rules"] = rules;
  if (h.mul) d["mul"] = table_doc(*h.mul, h.carrier);
  if (h.one) d["one"] = h.carrier[*h.one];
  return d;
}

Document to_document(const Report& r) {
  Document d = Document::object();
  d["ok"] = r.ok();
  Document v = Document::array();
  for (const auto& x : r.violations) {
    Document e = Document::object();
    e["axiom"] = x.axiom;
    e["count"] = x.count;
    e["witness"] = x.witness;
    if (!x.detail.empty()) e["detail"] = x.detail;
    v.push_back(std::move(e));
  }
  d["violations"] = v;
  d["checked"] = r.checked;
  Document facts = Document::object();
  for (const auto& [k, b] : r.facts) facts[k] = b;
  d["facts"] = facts;
  d["notes"] = r.notes;
  return d;
}

FiniteMonoid monoid_from(const Document& d) {
  const std::string ctx = "monoid";
  only_keys(d, {"elements", "op", "identity", "absorbing"}, ctx);
  FiniteMonoid m;
  m.elements = labels_of(field(d, "elements", ctx), ctx);
  m.op = table_of(field(d, "op", ctx), m.size(), m.size(), m.elements, ctx + " op");
  m.identity = index_of(m.elements, field(d, "identity", ctx), ctx);
  if (d.contains("absorbing")) m.absorbing = index_of(m.elements, d.at("absorbing"), ctx);
  validate(m);
  return m;
}

Hypermagma hypermagma_from(const Document& d) {
  const std::string ctx = "hypermagma";
  only_keys(d, {"carrier", "zero", "rules", "mul", "one"}, ctx);
  Hypermagma h;
  h.carrier = labels_of(field(d, "carrier", ctx), ctx);
  if (h.size() > kMaxCarrier) throw InputError(ctx + ": carrier larger than 64");
  h.table.assign(static_cast<std::size_t>(h.size()) * h.size(), 0);
  std::vector<bool> seen(h.table.size(), false);
  for (const auto& r : array_of(field(d, "rules", ctx), ctx)) {
    std::string line = string_of(r, ctx);
    auto [a, b] = parse_hyper_rule(line, h);
    std::size_t at = static_cast<std::size_t>(a) * h.size() + b;
    if (seen[at]) throw InputError(ctx + ": entry given twice in '" + line + "'");
    seen[at] = true;
  }
  if (d.contains("zero")) h.zero = index_of(h.carrier, d.at("zero"), ctx);
  if (d.contains("mul")) h.mul = table_of(d.at("mul"), h.size(), h.size(), h.carrier, ctx + " mul");
  if (d.contains("one")) h.one = index_of(h.carrier, d.at("one"), ctx);
  validate(h);
  return h;
}

void Library::include(const Library& other) { included_.push_back(other); }

const Library* Library::owner(std::string_view name, int kind) const {
  std::string n(name);
  bool here = false;
  switch (kind) {
    case kMonoid: here = monoids.count(n) > 0; break;
    case kModule: here = modules.count(n) > 0; break;
    case kPair: here = pairs.count(n) > 0; break;
    case kSurpassing: here = surpassing.count(n) > 0; break;
    case kHypermagma: here = hypermagmas.count(n) > 0; break;
    case kMap: here = maps.count(n) > 0; break;
  }
  if (here) return this;
  for (const auto& lib : included_)
    if (const Library* l = lib.owner(name, kind)) return l;
  return nullptr;
}

FiniteMonoid Library::monoid(std::string_view ref) const {
  if (is_builtin(ref)) return builtin_monoid(builtin_name(ref));
  if (auto* l = owner(ref, kMonoid)) return l->monoids.at(std::string(ref));
  if (auto* l = owner(ref, kHypermagma)) return build_hyperpair(l->hypermagmas.at(std::string(ref))).tangible_monoid;
  if (auto* l = owner(ref, kModule)) return l->modules.at(std::string(ref)).module.left_action().monoid;
  throw InputError("unresolved monoid reference '" + std::string(ref) + "'");
}

TModule Library::module(std::string_view ref) const {
  if (is_builtin(ref)) return builtin_module(builtin_name(ref));
  if (auto* l = owner(ref, kModule)) return l->modules.at(std::string(ref)).module;
  if (auto* l = owner(ref, kHypermagma)) return build_hyperpair(l->hypermagmas.at(std::string(ref))).to_module();
  if (auto* l = owner(ref, kPair)) return l->pairs.at(std::string(ref)).pair.module;
  throw InputError("unresolved module reference '" + std::string(ref) + "'");
}

Pair Library::pair(std::string_view ref) const {
  if (is_builtin(ref)) {
    auto name = builtin_name(ref);
    if (hypermagma_builtin(name)) return build_hyperpair(builtin_hypermagma_uri(name)).to_pair();
    return classical_pair(builtin_module(name));
  }
  if (auto* l = owner(ref, kPair)) return l->pairs.at(std::string(ref)).pair;
  if (auto* l = owner(ref, kHypermagma)) return build_hyperpair(l->hypermagmas.at(std::string(ref))).to_pair();
  if (auto* l = owner(ref, kModule)) return classical_pair(l->modules.at(std::string(ref)).module);
  throw InputError("unresolved pair reference '" + std::string(ref) + "'");
}

OrderedPair Library::ordered_pair(std::string_view ref) const {
  if (is_builtin(ref)) {
    auto name = builtin_name(ref);
    if (hypermagma_builtin(name)) return ordered_hyperpair(build_hyperpair(builtin_hypermagma_uri(name)));
    return ordered_classical(builtin_module(name));
  }
  if (auto* l = owner(ref, kSurpassing)) {
    const auto& e = l->surpassing.at(std::string(ref));
    return ordered(l->pair(e.pair), e.relation);
  }
  if (auto* l = owner(ref, kPair)) {
    const auto& p = l->pairs.at(std::string(ref)).pair;
    return ordered(p, SurpassingRelation::equality(p.size()));
  }
  if (auto* l = owner(ref, kHypermagma)) return ordered_hyperpair(build_hyperpair(l->hypermagmas.at(std::string(ref))));
  if (owner(ref, kModule)) return ordered_classical(module(ref));
  throw InputError("unresolved pair reference '" + std::string(ref) + "'");
}

Hypermagma Library::hypermagma(std::string_view ref) const {
  if (is_builtin(ref)) return builtin_hypermagma_uri(builtin_name(ref));
  if (auto* l = owner(ref, kHypermagma)) return l->hypermagmas.at(std::string(ref));
  throw InputError("unresolved hypermagma reference '" + std::string(ref) + "'");
}

const MapEntry& Library::map(std::string_view ref) const {
  if (auto* l = owner(ref, kMap)) return l->maps.at(std::string(ref));
  throw InputError("unresolved map reference '" + std::string(ref) + "'");
}

void Library::load(const Document& doc) {
  if (!doc.is_object()) throw InputError("structure file must be a table");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "version") continue;
    if (std::none_of(std::begin(kSections), std::end(kSections), [&](const char* s) { return it.key() == s; }))
      throw InputError("unknown section '" + it.key() + "'");
    if (!it->is_object()) throw InputError("section '" + it.key() + "' must be a table of named structures");
  }
  if (!doc.contains("version") || !doc.at("version").is_number_integer())
    throw InputError("missing integer version tag");
  if (doc.at("version").get<int>() != kFormatVersion)
    throw InputError("unsupported version " + doc.at("version").dump());

  auto section = [&](const char* s) -> const Document& {
    static const Document empty = Document::object();
    return doc.contains(s) ? doc.at(s) : empty;
  };
  auto fresh = [&](const std::string& name, int kind, const char* s) {
    if (name.empty() || is_builtin(name)) throw InputError(context(s, name) + ": invalid name");
    if (owner(name, kind)) throw InputError(context(s, name) + ": defined twice");
  };

  for (const auto& [name, d] : section("monoid").items()) {
    fresh(name, kMonoid, "monoid");
    try {
      monoids[name] = monoid_from(d);
    } catch (const InputError& e) {
      throw InputError(context("monoid", name) + ": " + e.what());
    }
  }
  for (const auto& [name, d] : section("hypermagma").items()) {
    fresh(name, kHypermagma, "hypermagma");
    try {
      hypermagmas[name] = hypermagma_from(d);
    } catch (const InputError& e) {
      throw InputError(context("hypermagma", name) + ": " + e.what());
    }
  }
  for (const auto& [name, d] : section("module").items()) {
    const std::string ctx = context("module", name);
    fresh(name, kModule, "module");
    only_keys(d, {"over", "carrier", "add", "zero", "action", "right_over", "right_action", "unit", "mul"}, ctx);
    ModuleEntry e;
    TModule& m = e.module;
    m.carrier = labels_of(field(d, "carrier", ctx), ctx);
    m.add = table_of(field(d, "add", ctx), m.size(), m.size(), m.carrier, ctx + " add");
    m.zero = index_of(m.carrier, field(d, "zero", ctx), ctx);
    if (d.contains("over") != d.contains("action")) throw InputError(ctx + ": 'over' and 'action' go together");
    if (d.contains("over")) {
      e.over = string_of(d.at("over"), ctx);
      FiniteMonoid t = monoid(e.over);
      m.left = Action{t, table_of(d.at("action"), t.size(), m.size(), m.carrier, ctx + " action")};
    }
    if (d.contains("right_over") != d.contains("right_action"))
      throw InputError(ctx + ": 'right_over' and 'right_action' go together");
    if (d.contains("right_over")) {
      e.right_over = string_of(d.at("right_over"), ctx);
      FiniteMonoid t = monoid(e.right_over);
      m.right = Action{t, table_of(d.at("right_action"), t.size(), m.size(), m.carrier, ctx + " right_action")};
    }
    if (d.contains("unit")) m.unit = index_of(m.carrier, d.at("unit"), ctx);
    if (d.contains("mul")) m.mul = table_of(d.at("mul"), m.size(), m.size(), m.carrier, ctx + " mul");
    try {
      validate(m);
    } catch (const InputError& err) {
      throw InputError(ctx + ": " + err.what());
    }
    modules[name] = std::move(e);
  }
  for (const auto& [name, d] : section("pair").items()) {
    const std::string ctx = context("pair", name);
    fresh(name, kPair, "pair");
    only_keys(d, {"module", "zero_set", "embedding", "product"}, ctx);
    PairEntry e;
    e.module = string_of(field(d, "module", ctx), ctx);
    Pair& p = e.pair;
    p.module = module(e.module);
    p.zero_set.assign(p.size(), false);
    for (const auto& x : array_of(field(d, "zero_set", ctx), ctx)) {
      int i = index_of(p.module.carrier, x, ctx);
      if (p.zero_set[i]) throw InputError(ctx + ": zero_set lists '" + p.module.carrier[i] + "' twice");
      p.zero_set[i] = true;
    }
    if (d.contains("embedding")) {
      std::vector<int> emb;
      for (const auto& x : array_of(d.at("embedding"), ctx)) emb.push_back(index_of(p.module.carrier, x, ctx));
      p.embedding = emb;
    }
    if (d.contains("product"))
      p.product = table_of(d.at("product"), p.size(), p.size(), p.module.carrier, ctx + " product", true);
    try {
      validate(p);
    } catch (const InputError& err) {
      throw InputError(ctx + ": " + err.what());
    }
    pairs[name] = std::move(e);
  }
  for (const auto& [name, d] : section("surpassing").items()) {
    const std::string ctx = context("surpassing", name);
    fresh(name, kSurpassing, "surpassing");
    only_keys(d, {"pair", "relation"}, ctx);
    SurpassingEntry e;
    e.pair = string_of(field(d, "pair", ctx), ctx);
    Pair p = pair(e.pair);
    e.relation = SurpassingRelation::equality(p.size());
    for (const auto& x : array_of(field(d, "relation", ctx), ctx)) {
      if (!x.is_array() || x.size() != 2) throw InputError(ctx + ": relation entries are [a, b]");
      int i = index_of(p.module.carrier, x[0], ctx), j = index_of(p.module.carrier, x[1], ctx);
      if (i == j || e.relation(i, j)) throw InputError(ctx + ": redundant relation entry");
      e.relation.set(i, j);
    }
    surpassing[name] = std::move(e);
  }
  for (const auto& [name, d] : section("map").items()) {
    const std::string ctx = context("map", name);
    fresh(name, kMap, "map");
    only_keys(d, {"from", "to", "rules"}, ctx);
    MapEntry e;
    e.from = string_of(field(d, "from", ctx), ctx);
    e.to = string_of(field(d, "to", ctx), ctx);
    auto src = ordered_pair(e.from), dst = ordered_pair(e.to);
    e.map.assign(src.size(), -1);
    for (const auto& r : array_of(field(d, "rules", ctx), ctx)) {
      std::string fname;
      auto [a, b] = parse_map_rule(string_of(r, ctx), src.module().carrier, dst.module().carrier, &fname);
      if (fname != name) throw InputError(ctx + ": rule names '" + fname + "'");
      if (e.map[a] >= 0) throw InputError(ctx + ": value of '" + src.module().carrier[a] + "' given twice");
      e.map[a] = b;
    }
    for (int a = 0; a < src.size(); ++a)
      if (e.map[a] < 0) throw InputError(ctx + ": no value for '" + src.module().carrier[a] + "'");
    maps[name] = std::move(e);
  }
}

Document Library::document() const {
  Document d = Document::object();
  d["version"] = kFormatVersion;
  auto put = [&](const char* s, const std::string& name, Document body) { d[s][name] = std::move(body); };

  for (const auto& [name, m] : monoids) put("monoid", name, to_document(m));
  for (const auto& [name, e] : modules) put("module", name, module_body(e.module, e.over, e.right_over));
  for (const auto& [name, e] : pairs) put("pair", name, pair_body(e.pair, e.module));
  for (const auto& [name, e] : surpassing)
    put("surpassing", name, relation_body(e.relation, pair(e.pair).module.carrier, e.pair));
  for (const auto& [name, h] : hypermagmas) put("hypermagma", name, to_document(h));
  for (const auto& [name, e] : maps)
    put("map", name, map_body(e, name, module(e.from).carrier, module(e.to).carrier));
  return d;
}

namespace {

Document inline_module(const TModule& m) {
  return module_body(m, m.left ? to_document(m.left->monoid) : Document(),
                     m.right ? to_document(m.right->monoid) : Document());
}

}  // namespace

Document Library::structure(std::string_view ref) const {
  Document d = Document::object();
  if (is_builtin(ref)) {
    auto name = builtin_name(ref);
    if (hypermagma_builtin(name)) {
      d["hypermagma"] = to_document(hypermagma(ref));
    } else {
      d["module"] = inline_module(module(ref));
    }
    return d;
  }
  if (auto* l = owner(ref, kSurpassing)) {
    const auto& e = l->surpassing.at(std::string(ref));
    Pair p = l->pair(e.pair);
    d["surpassing"] = relation_body(e.relation, p.module.carrier, pair_body(p, inline_module(p.module)));
  } else if (auto* l = owner(ref, kPair)) {
    const Pair& p = l->pairs.at(std::string(ref)).pair;
    d["pair"] = pair_body(p, inline_module(p.module));
  } else if (auto* l = owner(ref, kHypermagma)) {
    d["hypermagma"] = to_document(l->hypermagmas.at(std::string(ref)));
  } else if (owner(ref, kModule)) {
    d["module"] = inline_module(module(ref));
  } else if (auto* l = owner(ref, kMonoid)) {
    d["monoid"] = to_document(l->monoids.at(std::string(ref)));
  } else if (auto* l = owner(ref, kMap)) {
    const auto& e = l->maps.at(std::string(ref));
    d["map"] = map_body(e, ref, module(e.from).carrier, module(e.to).carrier);
    d["map"]["from"] = structure(e.from);
    d["map"]["to"] = structure(e.to);
  } else {
    throw InputError("unresolved reference '" + std::string(ref) + "'");
  }
  return d;
}

std::vector<std::string> Library::names() const {
  std::vector<std::string> out;
  auto add = [&](const auto& m) {
    for (const auto& [name, _] : m)
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  add(monoids);
  add(hypermagmas);
  add(modules);
  add(pairs);
  add(surpassing);
  add(maps);
  return out;
}

bool Library::empty() const {
  return monoids.empty() && modules.empty() && pairs.empty() && surpassing.empty() && hypermagmas.empty() &&
         maps.empty();
}

Document read_document(const std::filesystem::path& path) { return parse(read_text(path), format_of(path)); }

Library load_library(const std::filesystem::path& path, const std::vector<std::filesystem::path>& includes) {
  Library lib;
  for (const auto& inc : includes) lib.include(load_library(inc));
  try {
    lib.load(read_document(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return lib;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

Document structure_file(std::string_view section, std::string_view name, const Document& body) {
  Document d = Document::object();
  d["version"] = kFormatVersion;
  d[std::string(section)][std::string(name)] = body;
  return d;
}

}  // namespace hyperalg::io
