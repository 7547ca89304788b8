#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "food/context.hpp"
#include "food/diagnostic.hpp"
#include "food/fuzz.hpp"
#include "food/interp.hpp"
#include "food/parser.hpp"
#include "food/pipeline.hpp"
#include "food/pretty.hpp"
#include "food/transform.hpp"

namespace py = pybind11;
using namespace food;

namespace {

std::set<std::string> selectionOf(const Program& p, const std::optional<std::vector<std::string>>& types) {
  if (!types) return declaredTypes(p);
  return {types->begin(), types->end()};
}

py::object toPython(const Value& v) {
  if (v.isInt()) return py::int_(v.asInt());
  if (v.isBool()) return py::bool_(v.asBool());
  py::list fields;
  for (const auto& f : v.asObject().fields) fields.append(toPython(f));
  return py::module_::import("food._core").attr("Obj")(v.asObject().ctor, py::tuple(fields));
}

const char* statusName(EvalResult::Status s) {
  switch (s) {
    case EvalResult::Status::Value: return "value";
    case EvalResult::Status::FuelExhausted: return "fuel-exhausted";
    case EvalResult::Status::Stuck: return "stuck";
  }
  return "stuck";
}

py::dict outcome(const EvalResult& r) {
  py::dict d;
  d["status"] = statusName(r.status);
  d["value"] = r.value ? toPython(*r.value) : py::none();
  d["steps"] = r.steps;
  d["reason"] = r.reason;
  d["text"] = r.str();
  return d;
}

struct Obj {
  std::string ctor;
  py::tuple fields;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decomposition-switching transformation and interpreter for FOOD programs.";

  auto base = py::register_exception<Error>(m, "FoodError", PyExc_ValueError);
  py::register_exception<TypeError>(m, "FoodTypeError", base.ptr());

  py::class_<Obj>(m, "Obj")
      .def(py::init<std::string, py::tuple>(), py::arg("ctor"), py::arg("fields"))
      .def_readonly("ctor", &Obj::ctor)
      .def_readonly("fields", &Obj::fields)
      .def("__eq__",
           [](const Obj& a, py::object b) {
             if (!py::isinstance<Obj>(b)) return false;
             const Obj& o = b.cast<const Obj&>();
             return a.ctor == o.ctor && a.fields.equal(o.fields);
           })
      .def("__hash__", [](const Obj& o) { return py::hash(py::make_tuple(o.ctor, o.fields)); })
      .def("__repr__", [](const Obj& o) {
        std::string out = "obj(" + o.ctor;
        for (auto f : o.fields) {
          out += ", ";
          out += py::isinstance<py::bool_>(f) ? (f.cast<bool>() ? "true" : "false") : py::repr(f).cast<std::string>();
        }
        return out + ")";
      });

  py::class_<Program>(m, "Program")
      .def_static("parse", &load, py::arg("source"), "Parse, desugar and check a program.")
      .def("__str__", [](const Program& p) { return pretty(p); })
      .def("__repr__", [](const Program& p) { return "<food.Program with " + std::to_string(p.defs.size()) + " definitions>"; })
      .def("__eq__", [](const Program& a, const Program& b) { return canonicalize(a) == canonicalize(b); })
      .def_property_readonly("types", [](const Program& p) {
        auto s = declaredTypes(p);
        return std::vector<std::string>(s.begin(), s.end());
      })
      .def_property_readonly("definitions", [](const Program& p) {
        std::vector<std::string> out;
        for (const auto& d : p.defs) out.push_back(d.name());
        return out;
      });

  m.def("parse", &load, py::arg("source"));
  m.def("pretty", [](const Program& p) { return pretty(canonicalize(p)); }, py::arg("program"),
        "Canonical source text.");
  m.def("typecheck", [](const Program& p) { return typecheck(p).str(); }, py::arg("program"));
  m.def(
      "transform",
      [](const Program& p, std::optional<std::vector<std::string>> types) {
        return transform(p, selectionOf(p, types)).program;
      },
      py::arg("program"), py::arg("types") = py::none());
  m.def(
      "roundtrip",
      [](const Program& p, std::optional<std::vector<std::string>> types) {
        RoundTrip rt = roundTrip(p, selectionOf(p, types));
        if (!rt.sameType) rt.diff.push_back("! type changed");
        return rt.diff;
      },
      py::arg("program"), py::arg("types") = py::none(), "Empty when transforming twice gives the input back.");
  m.def(
      "eval", [](const Program& p, std::size_t fuel) { return outcome(eval(p, fuel)); }, py::arg("program"),
      py::arg("fuel") = kDefaultFuel);
  m.def(
      "trace",
      [](const Program& p, std::size_t fuel) {
        Trace t = trace(p, fuel);
        std::vector<std::string> steps;
        for (const auto& e : t.steps) steps.push_back(show(e));
        py::dict d = outcome(t.outcome);
        d["trace"] = steps;
        return d;
      },
      py::arg("program"), py::arg("fuel") = kDefaultFuel);
  m.def("context", [](const Program& p) { return dump(preprocess(p)); }, py::arg("program"));
  m.def(
      "generate",
      [](std::uint64_t seed, double styleMix) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.styleMix = styleMix;
        cfg.validate();
        return genProgram(cfg);
      },
      py::arg("seed"), py::arg("style_mix") = 0.5);
  m.def(
      "check_properties",
      [](const Program& p, std::optional<std::vector<std::string>> types, std::size_t fuel) {
        PropertyOptions opts;
        opts.fuel = fuel;
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& f : checkProgram(p, selectionOf(p, types), opts).failures) out.emplace_back(f.property, f.detail);
        return out;
      },
      py::arg("program"), py::arg("types") = py::none(), py::arg("fuel") = kDefaultFuel,
      "Failed properties as (name, detail) pairs.");
  m.def(
      "fuzz",
      [](std::size_t trials, std::uint64_t seed, std::size_t fuel) {
        GenConfig cfg;
        cfg.seed = seed;
        PropertyOptions opts;
        opts.fuel = fuel;
        FuzzReport r;
        {
          py::gil_scoped_release release;
          r = runProperties(cfg, trials, opts, true);
        }
        return r.summary();
      },
      py::arg("trials") = 100, py::arg("seed") = 1, py::arg("fuel") = kDefaultFuel, "JSON summary of a fuzz run.");
}
