#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperalg {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t largest_feasible)
      : std::runtime_error(what), largest_feasible_(largest_feasible) {}
  std::size_t largest_feasible() const { return largest_feasible_; }

 private:
  std::size_t largest_feasible_;
};

// Thrown when an enumeration would exceed its candidate cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, double candidates, double cap)
      : std::runtime_error(what), candidates_(candidates), cap_(cap) {}
  double candidates() const { return candidates_; }
  double cap() const { return cap_; }

 private:
  double candidates_;
  double cap_;
};

// Thrown by operations that need a saturated closure.
class Undetermined : public std::runtime_error {
 public:
  Undetermined(const std::string& what, std::size_t bound)
      : std::runtime_error(what), bound_(bound) {}
  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
};

enum class Verdict { pass, fail, undetermined, cap };

std::string_view to_string(Verdict v);
int exit_code(Verdict v);

struct Violation {
  std::string axiom;
  std::vector<int> witness;  // first counterexample in lexicographic order
  std::size_t count = 0;
  std::string detail;
};

struct Report {
  std::vector<Violation> violations;
  std::vector<std::string> checked;
  std::map<std::string, bool> facts;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  const Violation* find(std::string_view axiom) const;
  std::size_t count(std::string_view axiom) const;
  bool violated(std::string_view axiom) const { return find(axiom) != nullptr; }
  void merge(const Report& other, std::string_view prefix = {});
  std::string summary() const;
};

// Accumulates violations per axiom, keeping the first witness and a count.
class Checker {
 public:
  void axiom(std::string_view name);
  void fail(std::string_view name, std::vector<int> witness, std::string detail = {});
  bool expect(bool cond, std::string_view name, std::vector<int> witness, std::string detail = {}) {
    if (!cond) fail(name, std::move(witness), std::move(detail));
    return cond;
  }
  void fact(std::string_view name, bool value) { report_.facts[std::string(name)] = value; }
  void note(std::string text) { report_.notes.push_back(std::move(text)); }
  Report& report() { return report_; }
  Report take() { return std::move(report_); }

 private:
  Report report_;
};

}  // namespace hyperalg
