#include "hyperalg/report.hpp"

#include <algorithm>
#include <sstream>

namespace hyperalg {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::undetermined: return "undetermined";
    case Verdict::cap: return "cap";
  }
  return "fail";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::undetermined: return 2;
    case Verdict::cap: return 4;
  }
  return 1;
}

const Violation* Report::find(std::string_view axiom) const {
  for (const auto& v : violations)
    if (v.axiom == axiom) return &v;
  return nullptr;
}

std::size_t Report::count(std::string_view axiom) const {
  const Violation* v = find(axiom);
  return v ? v->count : 0;
}

void Report::merge(const Report& other, std::string_view prefix) {
  auto name = [&](const std::string& s) {
    return prefix.empty() ? s : std::string(prefix) + "." + s;
  };
  for (const auto& c : other.checked) checked.push_back(name(c));
  for (const auto& v : other.violations) {
    Violation w = v;
    w.axiom = name(v.axiom);
    violations.push_back(std::move(w));
  }
  for (const auto& [k, b] : other.facts) facts[name(k)] = b;
  for (const auto& n : other.notes) notes.push_back(n);
}

std::string Report::summary() const {
  std::ostringstream out;
  if (violations.empty()) {
    out << "ok (" << checked.size() << " axioms)";
    return out.str();
  }
  for (const auto& v : violations) {
    out << v.axiom << " x" << v.count << " at (";
    for (std::size_t i = 0; i < v.witness.size(); ++i) out << (i ? "," : "") << v.witness[i];
    out << ")";
    if (!v.detail.empty()) out << " " << v.detail;
    out << "\n";
  }
  return out.str();
}

void Checker::axiom(std::string_view name) {
  std::string s(name);
  if (std::find(report_.checked.begin(), report_.checked.end(), s) == report_.checked.end())
    report_.checked.push_back(std::move(s));
}

void Checker::fail(std::string_view name, std::vector<int> witness, std::string detail) {
  axiom(name);
  for (auto& v : report_.violations) {
    if (v.axiom == name) {
      ++v.count;
      return;
    }
  }
  report_.violations.push_back({std::string(name), std::move(witness), 1, std::move(detail)});
}

}  // namespace hyperalg
