#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperalg/core.hpp"
#include "hyperalg/hyper.hpp"
#include "hyperalg/morphism.hpp"
#include "hyperalg/report.hpp"

namespace hyperalg::io {

using Document = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;
inline constexpr std::string_view kBuiltinScheme = "builtin:";

enum class Format { json, toml };

Format parse_format(std::string_view name);
Format format_of(const std::filesystem::path& path);  // .toml, else json

// TOML subset: [a.b] headers, key = value, strings, integers, booleans, arrays, # comments.
Document parse_toml(std::string_view text);
std::string emit_toml(const Document& doc);
std::string emit_json(const Document& doc);
Document parse(std::string_view text, Format format);
std::string emit(const Document& doc, Format format);

std::uint64_t fnv1a64(std::string_view bytes);
// 16 hex digits of the FNV-1a hash of the compact JSON emission.
std::string fingerprint(const Document& doc);

// "a+b = {x,y}" and "f(a) = b"; labels are matched against the carrier, so they may contain '+'.
// Sets the entry and returns its (a, b).
std::pair<int, int> parse_hyper_rule(std::string_view line, Hypermagma& h);
std::string hyper_rule(const Hypermagma& h, int a, int b);
std::pair<int, int> parse_map_rule(std::string_view line, const std::vector<std::string>& from,
                                   const std::vector<std::string>& to, std::string* name = nullptr);

Document to_document(const FiniteMonoid& m);
Document to_document(const Hypermagma& h);
Document to_document(const Report& r);
FiniteMonoid monoid_from(const Document& d);
Hypermagma hypermagma_from(const Document& d);

struct ModuleEntry {
  TModule module;
  std::string over;
  std::string right_over;  // empty when the right action is absent
};

struct PairEntry {
  Pair pair;
  std::string module;
};

struct SurpassingEntry {
  SurpassingRelation relation;
  std::string pair;
};

struct MapEntry {
  std::vector<int> map;
  std::string from;
  std::string to;
};

// Named structures of one file. Cross references resolve here, in included libraries, or as builtin: URIs.
class Library {
 public:
  std::map<std::string, FiniteMonoid> monoids;
  std::map<std::string, ModuleEntry> modules;
  std::map<std::string, PairEntry> pairs;
  std::map<std::string, SurpassingEntry> surpassing;
  std::map<std::string, Hypermagma> hypermagmas;
  std::map<std::string, MapEntry> maps;

  void include(const Library& other);
  void load(const Document& doc);  // validates every entry

  FiniteMonoid monoid(std::string_view ref) const;
  TModule module(std::string_view ref) const;
  Pair pair(std::string_view ref) const;
  OrderedPair ordered_pair(std::string_view ref) const;
  Hypermagma hypermagma(std::string_view ref) const;
  const MapEntry& map(std::string_view ref) const;

  // Canonical document of the entries defined here (included ones are left out).
  Document document() const;
  // Canonical document of one resolved structure, the input of fingerprint().
  Document structure(std::string_view ref) const;
  std::vector<std::string> names() const;
  bool empty() const;

 private:
  std::vector<Library> included_;
  const Library* owner(std::string_view name, int kind) const;
};

Document read_document(const std::filesystem::path& path);
Library load_library(const std::filesystem::path& path, const std::vector<std::filesystem::path>& includes = {});
void write_text(const std::filesystem::path& path, std::string_view text);

// Document of one structure as a file with a single section.
Document structure_file(std::string_view section, std::string_view name, const Document& body);

}  // namespace hyperalg::io
