#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperalg/fixtures.hpp"
#include "hyperalg/hyper.hpp"
#include "hyperalg/io.hpp"
#include "hyperalg/morphism.hpp"
#include "hyperalg/residue.hpp"
#include "hyperalg/tensor.hpp"

namespace py = pybind11;
using namespace hyperalg;

namespace {

py::list violations(const Report& r) {
  py::list out;
  for (const auto& v : r.violations) {
    py::dict d;
    d["axiom"] = v.axiom;
    d["witness"] = v.witness;
    d["count"] = v.count;
    d["detail"] = v.detail;
    out.append(d);
  }
  return out;
}

Hypermagma quotient(int order, const std::vector<std::string>& subgroup_labels) {
  TModule m = builtin_module("F" + std::to_string(order));
  return residue(m, subgroup(m.left_action().monoid, subgroup_labels)).hypermagma;
}

py::dict tensor_summary(const std::string& a, const std::string& b, int bound) {
  TensorOptions o;
  o.bound = bound;
  Tensor t = build_tensor(builtin_module(a), builtin_module(b), o);
  py::dict d;
  d["classes"] = t.class_count();
  d["saturated"] = t.saturated();
  d["labels"] = t.class_labels();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite hyperalgebra workbench";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<Undetermined>(m, "Undetermined", PyExc_RuntimeError);

  py::class_<Report>(m, "Report")
      .def_property_readonly("ok", &Report::ok)
      .def_readonly("checked", &Report::checked)
      .def_readonly("facts", &Report::facts)
      .def_readonly("notes", &Report::notes)
      .def_property_readonly("violations", &violations)
      .def("violated", [](const Report& r, const std::string& a) { return r.violated(a); })
      .def("summary", &Report::summary)
      .def("__repr__", [](const Report& r) { return "<Report " + r.summary() + ">"; });

  py::class_<Hypermagma>(m, "Hypermagma")
      .def_readonly("carrier", &Hypermagma::carrier)
      .def_readonly("zero", &Hypermagma::zero)
      .def_readonly("one", &Hypermagma::one)
      .def("__len__", &Hypermagma::size)
      .def("index_of", [](const Hypermagma& h, const std::string& l) { return h.index_of(l); })
      .def("add", [](const Hypermagma& h, int a, int b) {
        if (a < 0 || b < 0 || a >= h.size() || b >= h.size()) throw py::index_error("element out of range");
        return members(h.add(a, b));
      })
      .def("to_json", [](const Hypermagma& h) { return io::to_document(h).dump(); })
      .def_static("from_json", [](const std::string& s) { return io::hypermagma_from(io::Document::parse(s)); })
      .def(py::self == py::self);

  m.def("builtin_hypermagma", [](const std::string& name, std::optional<int> n) { return builtin_hypermagma(name, n); },
        py::arg("name"), py::arg("param") = py::none());
  m.def("builtin_hypermagma_names", &builtin_hypermagma_names);
  m.def("check_hypersemigroup", &check_hypersemigroup);
  m.def("check_hypergroup", [](const Hypermagma& h) { return check_hypergroup(h); });
  m.def("check_hyperfield", &check_hyperfield);
  m.def("canonical_form", &canonical_form);
  m.def("quotient", &quotient, py::arg("order"), py::arg("subgroup"));
  m.def(
      "census",
      [](int order, const std::string& suite, int workers, double cap) {
        const Suite s = parse_suite(suite);
        if (order < 1 || order > 4) throw InputError("census order must be between 1 and 4");
        if (census_candidates(order) > cap) throw CapExceeded("census candidates exceed the cap", census_candidates(order), cap);
        py::gil_scoped_release release;
        return census(order, s, workers).tables;
      },
      py::arg("order"), py::arg("suite") = "hypergroup", py::arg("workers") = 1, py::arg("cap") = kDefaultMapCap);
  m.def("tensor_summary", &tensor_summary, py::arg("m1"), py::arg("m2"), py::arg("bound") = 4);
  m.def("nr_counterexample", [] {
    NRWitness w = nr_assoc_counterexample();
    auto show = [&](Subset x) { return x ? w.tensor.subset(x) : std::string("∅"); };
    return py::make_tuple(show(w.first), show(w.second));
  });
  m.def("parse_toml", [](const std::string& text) { return io::parse_toml(text).dump(); });
  m.def("emit_toml", [](const std::string& json) { return io::emit_toml(io::Document::parse(json)); });
  m.def("fingerprint", [](const std::string& json) { return io::fingerprint(io::Document::parse(json)); });
}
