#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>

#include "hyperalg/io.hpp"

namespace hyperalg::io {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Document run() {
    Document root = Document::object();
    Document* table = &root;
    while (!done()) {
      skip_blank_lines();
      if (done()) break;
      if (peek() == '[') {
        ++pos_;
        if (peek() == '[') fail("arrays of tables are not supported");
        auto path = key_path(']');
        expect(']');
        end_of_line();
        table = &root;
        for (const auto& k : path) {
          auto& next = (*table)[k];
          if (next.is_null()) next = Document::object();
          if (!next.is_object()) fail("'" + k + "' is not a table");
          table = &next;
        }
        if (!defined_.insert(joined(path)).second) fail("table defined twice");
        continue;
      }
      auto path = key_path('=');
      expect('=');
      skip_space();
      Document v = value();
      end_of_line();
      Document* at = table;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        auto& next = (*at)[path[i]];
        if (next.is_null()) next = Document::object();
        if (!next.is_object()) fail("'" + path[i] + "' is not a table");
        at = &next;
      }
      if (at->contains(path.back())) fail("duplicate key '" + path.back() + "'");
      (*at)[path.back()] = std::move(v);
    }
    return root;
  }

 private:
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    int line = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) line += text_[i] == '\n';
    throw InputError("toml line " + std::to_string(line) + ": " + what);
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (!done() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#')
      while (!done() && peek() != '\n') ++pos_;
  }

  void skip_blank_lines() {
    while (!done()) {
      skip_space();
      skip_comment();
      if (peek() == '\r') ++pos_;
      if (peek() != '\n') return;
      ++pos_;
    }
  }

  // Whitespace, comments and newlines inside arrays.
  void skip_any() {
    while (!done()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else if (c == '#') {
        skip_comment();
      } else {
        return;
      }
    }
  }

  void end_of_line() {
    skip_space();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (done()) return;
    if (peek() != '\n') fail("unexpected text after value");
    ++pos_;
  }

  static std::string joined(const std::vector<std::string>& path) {
    std::string s;
    for (const auto& k : path) s += k + '\x1f';
    return s;
  }

  std::vector<std::string> key_path(char stop) {
    std::vector<std::string> path;
    for (;;) {
      skip_space();
      if (peek() == '"') {
        path.push_back(basic_string());
      } else if (peek() == '\'') {
        path.push_back(literal_string());
      } else {
        std::string k;
        while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-'))
          k += text_[pos_++];
        if (k.empty()) fail("expected a key");
        path.push_back(k);
      }
      skip_space();
      if (peek() == '.') {
        ++pos_;
        continue;
      }
      if (peek() != stop) fail(std::string("expected '") + stop + "'");
      return path;
    }
  }

  std::string basic_string() {
    ++pos_;
    std::string out;
    for (;;) {
      if (done() || peek() == '\n') fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (done()) fail("unterminated escape");
      char e = text_[pos_++];
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'u':
        case 'U': {
          int digits = e == 'u' ? 4 : 8;
          if (pos_ + digits > text_.size()) fail("short unicode escape");
          unsigned long cp = std::stoul(std::string(text_.substr(pos_, digits)), nullptr, 16);
          pos_ += digits;
          append_utf8(out, cp);
          break;
        }
        default: fail(std::string("bad escape \\") + e);
      }
    }
  }

  static void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::string literal_string() {
    ++pos_;
    std::string out;
    for (;;) {
      if (done() || peek() == '\n') fail("unterminated string");
      char c = text_[pos_++];
      if (c == '\'') return out;
      out += c;
    }
  }

  Document value() {
    char c = peek();
    if (c == '"') {
      if (text_.substr(pos_, 3) == "\"\"\"") fail("multi-line strings are not supported");
      return basic_string();
    }
    if (c == '\'') return literal_string();
    if (c == '[') {
      ++pos_;
      Document arr = Document::array();
      for (;;) {
        skip_any();
        if (peek() == ']') {
          ++pos_;
          return arr;
        }
        arr.push_back(value());
        skip_any();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() != ']') fail("expected ',' or ']'");
      }
    }
    if (c == '{') fail("inline tables are not supported");
    std::string word;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-' || peek() == '+' ||
                       peek() == '_' || peek() == '.'))
      word += text_[pos_++];
    if (word == "true") return true;
    if (word == "false") return false;
    std::string digits;
    for (char d : word)
      if (d != '_') digits += d;
    if (digits.empty()) fail("expected a value");
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(digits, &used, 10);
    } catch (const std::exception&) {
      fail("bad value '" + word + "'");
    }
    if (used != digits.size()) fail("only integer numbers are supported");
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::set<std::string> defined_;
};

bool bare_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + '"';
}

std::string key(const std::string& k) { return bare_key(k) ? k : quoted(k); }

std::string scalar(const Document& v) {
  if (v.is_string()) return quoted(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  throw InputError("value not representable in toml: " + v.dump());
}

std::string inline_value(const Document& v) {
  if (!v.is_array()) return scalar(v);
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += inline_value(v[i]);
  }
  return s + "]";
}

// One element per line when the array holds arrays or is long.
std::string array_value(const Document& v) {
  bool nested = false;
  for (const auto& x : v) nested = nested || x.is_array();
  std::string flat = inline_value(v);
  if (!nested && flat.size() <= 80) return flat;
  std::string s = "[\n";
  for (const auto& x : v) s += "  " + inline_value(x) + ",\n";
  return s + "]";
}

void emit_table(std::ostringstream& out, const Document& t, const std::string& prefix) {
  for (auto it = t.begin(); it != t.end(); ++it) {
    if (it->is_object()) continue;
    if (it->is_null()) throw InputError("null is not representable in toml");
    out << key(it.key()) << " = " << (it->is_array() ? array_value(*it) : scalar(*it)) << '\n';
  }
  for (auto it = t.begin(); it != t.end(); ++it) {
    if (!it->is_object()) continue;
    std::string name = prefix.empty() ? key(it.key()) : prefix + "." + key(it.key());
    bool leaf = false;
    for (const auto& x : *it) leaf = leaf || !x.is_object();
    if (leaf || it->empty()) {
      out << (out.tellp() > 0 ? "\n" : "") << '[' << name << "]\n";
    }
    emit_table(out, *it, name);
  }
}

}  // namespace

Document parse_toml(std::string_view text) { return Reader(text).run(); }

std::string emit_toml(const Document& doc) {
  if (!doc.is_object()) throw InputError("toml document must be a table");
  std::ostringstream out;
  emit_table(out, doc, "");
  return out.str();
}

}  // namespace hyperalg::io
