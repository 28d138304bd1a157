#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hyperalg/fixtures.hpp"
#include "hyperalg/io.hpp"
#include "oracle.hpp"

using namespace hyperalg;
namespace fs = std::filesystem;

namespace {

const char* kLibrary = R"(version = 1

# two-element boolean semiring
[monoid.T]
elements = ["0", "1"]
op = [["0", "0"], ["0", "1"]]
identity = "1"
absorbing = "0"

[module.B]
over = "T"
carrier = ["0", "1"]
add = [
  ["0", "1"],
  ["1", "1"],   # idempotent
]
zero = "0"
action = [["0", "0"], ["0", "1"]]

[pair.Bp]
module = "B"
zero_set = ["0"]

[surpassing.le]
pair = "Bp"
relation = [["0", "1"]]

[hypermagma.k]
carrier = ["0", "1"]
zero = "0"
rules = ["0+0 = {0}", "0+1 = {1}", "1+0 = {1}", "1+1 = {0,1}"]

[map.f]
from = "B"
to = "B"
rules = ["f(0) = 0", "f(1) = 1"]
)";

fs::path temp_file(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("hyperalg_io_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Fnv, KnownVectors) {
  EXPECT_EQ(io::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(io::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(io::fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Toml, ScalarsArraysAndComments) {
  auto d = io::parse_toml(R"(
a = 1
b = "x\ty"  # trailing
c = 'raw\n'
d = true
e = [1, 2,
     3,]
[t.u]
"quoted key" = -4
)");
  EXPECT_EQ(d["a"], 1);
  EXPECT_EQ(d["b"], "x\ty");
  EXPECT_EQ(d["c"], "raw\\n");
  EXPECT_EQ(d["d"], true);
  EXPECT_EQ(d["e"], (io::Document{1, 2, 3}));
  EXPECT_EQ(d["t"]["u"]["quoted key"], -4);
}

TEST(Toml, Rejections) {
  for (const char* bad : {"a = 1\na = 2", "[x]\n[x]", "a = {b = 1}", "a = 1.5", "[[x]]", "a = \"open",
                          "a = \"\"\"x\"\"\"", "= 3"})
    EXPECT_THROW(io::parse_toml(bad), InputError) << bad;
}

TEST(Toml, ErrorsCarryLineNumbers) {
  try {
    io::parse_toml("a = 1\n\nb = ?\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Library, LoadsEverySection) {
  io::Library lib;
  lib.load(io::parse_toml(kLibrary));
  EXPECT_TRUE(check_monoid(lib.monoid("T")).ok());
  TModule b = lib.module("B");
  EXPECT_TRUE(check_module(b).ok());
  EXPECT_EQ(b.add(1, 1), 1);
  Pair p = lib.pair("Bp");
  EXPECT_EQ(p.zero_set, (std::vector<bool>{true, false}));
  OrderedPair le = lib.ordered_pair("le");
  EXPECT_TRUE(le.order(0, 1));
  EXPECT_TRUE(le.order(1, 1));
  EXPECT_FALSE(le.order(1, 0));
  Hypermagma k = lib.hypermagma("k");
  EXPECT_EQ(k.add(1, 1), full_set(2));
  EXPECT_TRUE(oracle::hypergroup(k));
  EXPECT_EQ(lib.map("f").map, (std::vector<int>{0, 1}));
}

TEST(Library, BuiltinReferences) {
  io::Library lib;
  EXPECT_EQ(lib.module("builtin:F3").size(), 3);
  EXPECT_EQ(lib.hypermagma("builtin:sign").size(), 3);
  EXPECT_EQ(lib.pair("builtin:sign").size(), 4);
  EXPECT_THROW(lib.module("nothing"), InputError);
}

TEST(Library, RoundTripIsByteStable) {
  io::Library lib;
  lib.load(io::parse_toml(kLibrary));
  for (auto fmt : {io::Format::toml, io::Format::json}) {
    std::string once = io::emit(lib.document(), fmt);
    io::Library again;
    again.load(io::parse(once, fmt));
    EXPECT_EQ(io::emit(again.document(), fmt), once);
  }
}

TEST(Library, FingerprintIgnoresFormat) {
  io::Library a, b;
  a.load(io::parse_toml(kLibrary));
  b.load(io::parse(io::emit_json(a.document()), io::Format::json));
  for (const auto& name : a.names()) EXPECT_EQ(io::fingerprint(a.structure(name)), io::fingerprint(b.structure(name)));
  EXPECT_NE(io::fingerprint(a.structure("B")), io::fingerprint(a.structure("k")));
  EXPECT_EQ(io::fingerprint(a.structure("B")).size(), 16u);
}

TEST(Library, Errors) {
  auto load = [](const std::string& text) {
    io::Library lib;
    lib.load(io::parse_toml(text));
  };
  EXPECT_THROW(load("[monoid.T]\nelements = [\"1\"]\nop = [[\"1\"]]\nidentity = \"1\""), InputError);  // no version
  EXPECT_THROW(load("version = 2"), InputError);
  EXPECT_THROW(load("version = 1\n[nope.x]\na = 1"), InputError);
  EXPECT_THROW(load("version = 1\n[monoid.T]\nelements = [\"1\"]\nop = [[\"1\"]]\nidentity = \"1\"\nextra = 1"),
               InputError);
  EXPECT_THROW(load("version = 1\n[monoid.T]\nelements = [\"1\"]\nop = [[\"2\"]]\nidentity = \"1\""), InputError);
  EXPECT_THROW(load("version = 1\n[module.M]\nover = \"missing\"\ncarrier = [\"0\"]\nadd = [[\"0\"]]\nzero = \"0\"\n"
                    "action = [[\"0\"]]"),
               InputError);
}

TEST(Library, IncludesResolveAcrossFiles) {
  std::string base(kLibrary);
  fs::path a = temp_file("base.toml", base);
  fs::path b = temp_file("user.toml", "version = 1\n[pair.P]\nmodule = \"B\"\nzero_set = [\"0\"]\n");
  io::Library lib = io::load_library(b, {a});
  EXPECT_EQ(lib.pair("P").size(), 2);
  // Included entries are not re-emitted.
  EXPECT_FALSE(lib.document().contains("module"));
  fs::remove(a);
  fs::remove(b);
}

TEST(Rules, HyperRuleWithSignedLabels) {
  Hypermagma s = builtin_hypermagma("sign");
  Hypermagma h = s;
  std::fill(h.table.begin(), h.table.end(), 0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_EQ(io::parse_hyper_rule(io::hyper_rule(s, a, b), h), std::make_pair(a, b));
  EXPECT_EQ(h.table, s.table);
  EXPECT_EQ(io::parse_hyper_rule("1+-1 = {}", h), std::make_pair(1, 2));
  EXPECT_EQ(h.add(1, 2), 0u);
  EXPECT_THROW(io::parse_hyper_rule("1+2 = {0}", h), InputError);
}

TEST(Rules, MapRule) {
  std::vector<std::string> from{"a", "b"}, to{"x", "y"};
  std::string name;
  EXPECT_EQ(io::parse_map_rule("g(b) = x", from, to, &name), std::make_pair(1, 0));
  EXPECT_EQ(name, "g");
  EXPECT_THROW(io::parse_map_rule("g(c) = x", from, to), InputError);
  EXPECT_THROW(io::parse_map_rule("g b = x", from, to), InputError);
}

TEST(Documents, HypermagmaRoundTrip) {
  for (const char* name : {"sign", "krasner"}) {
    Hypermagma h = builtin_hypermagma(name);
    Hypermagma back = io::hypermagma_from(io::to_document(h));
    EXPECT_EQ(back.table, h.table);
    EXPECT_EQ(back.carrier, h.carrier);
    EXPECT_EQ(back.zero, h.zero);
  }
  FiniteMonoid m = cyclic_group(3);
  EXPECT_EQ(io::monoid_from(io::to_document(m)), m);
}
