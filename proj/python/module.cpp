#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <random>

#include "tritcert/dictator.hpp"
#include "tritcert/error.hpp"
#include "tritcert/fourier.hpp"
#include "tritcert/gadgets.hpp"
#include "tritcert/json_io.hpp"
#include "tritcert/longcode.hpp"
#include "tritcert/suites.hpp"

namespace py = pybind11;
using namespace tritcert;

namespace {

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(to_string(r));
}

// int, Fraction or "a/b"
Rational from_python(const py::handle& h) { return parse_rational(py::str(h)); }

py::object json_to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json python_to_json(const py::object& o) {
  return Json::parse(py::cast<std::string>(py::module_::import("json").attr("dumps")(o)));
}

FunctionTable make_table(int arity, const std::vector<int>& values, bool folded) {
  std::vector<Trit> trits;
  trits.reserve(values.size());
  for (int v : values) {
    if (v < 0 || v > 2) throw ContractError("table values must be 0, 1 or 2");
    trits.push_back(static_cast<Trit>(v));
  }
  return FunctionTable(arity, std::move(trits), folded);
}

py::dict report_dict(const TestReport& r) {
  py::list steps;
  for (const auto& s : r.intermediates) {
    steps.append(py::dict(py::arg("name") = s.name, py::arg("lhs") = s.lhs, py::arg("rhs") = s.rhs,
                          py::arg("holds") = s.holds));
  }
  return py::dict(py::arg("test") = r.test, py::arg("pass_probability") = fraction(r.pass_probability),
                  py::arg("dec") = r.dec, py::arg("bound_rhs") = r.bound_rhs,
                  py::arg("bound_satisfied") = r.bound_satisfied, py::arg("intermediates") = steps);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Z_3 Fourier tools, dictatorship tests and gadget reductions";

  auto& base = py::register_exception<Error>(m, "TritcertError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());

  py::class_<FunctionTable>(m, "FunctionTable")
      .def(py::init(&make_table), py::arg("arity"), py::arg("values"), py::arg("folded") = false)
      .def_static("constant", [](int n, int c) { return FunctionTable::constant(n, static_cast<Trit>(c)); })
      .def_static("dictator", &FunctionTable::dictator, py::arg("arity"), py::arg("coordinate"))
      .def_static("random", [](int n, std::uint64_t seed, bool folded) {
        std::mt19937_64 rng(seed);
        return folded ? random_folded_table(n, rng) : random_table(n, rng);
      }, py::arg("arity"), py::arg("seed"), py::arg("folded") = false)
      .def_property_readonly("arity", &FunctionTable::arity)
      .def_property_readonly("folded", &FunctionTable::folded_flag)
      .def_property_readonly("values", [](const FunctionTable& f) {
        return std::vector<int>(f.values().begin(), f.values().end());
      })
      .def("__call__", [](const FunctionTable& f, Index x) {
        if (x >= f.size()) throw py::index_error("point out of range");
        return static_cast<int>(f(x));
      })
      .def("__len__", &FunctionTable::size)
      .def("__eq__", [](const FunctionTable& a, const FunctionTable& b) { return a == b; })
      .def("__repr__", [](const FunctionTable& f) {
        return "FunctionTable(arity=" + std::to_string(f.arity()) + (f.folded_flag() ? ", folded)" : ")");
      });

  m.def("is_folded", &is_folded);
  m.def("transform", [](const FunctionTable& f) { return transform(f).coefficients; },
        "Fourier coefficients indexed by base-3 little-endian alpha.");
  m.def("dec", [](const FunctionTable& f, const FunctionTable& g) {
    return dec_quantity(transform(f), transform(g), blocks_for(f, g));
  });
  m.def("even_mass", [](const FunctionTable& f) { return even_mass(transform(f)); });

  m.def("pass_probability_2nlin", [](const FunctionTable& f, const FunctionTable& g, const FunctionTable& h) {
    return fraction(pass_probability_2nlin(f, g, h));
  });
  m.def("pass_probability_3col", [](const FunctionTable& f, const FunctionTable& g, const FunctionTable& h) {
    return fraction(pass_probability_3col(f, g, h));
  });
  m.def("pass_probability_4nat",
        [](const FunctionTable& f, const FunctionTable& g) { return fraction(pass_probability_4nat(f, g)); });
  m.def("best_middle_function", [](const FunctionTable& f, const FunctionTable& g, const std::string& test) {
    if (test == "2nlin") return best_middle_function(f, g, MiddleTest::TwoNLin);
    if (test == "3coloring") return best_middle_function(f, g, MiddleTest::ThreeColoring);
    throw ContractError("test must be '2nlin' or '3coloring'");
  }, py::arg("f"), py::arg("g"), py::arg("test") = "2nlin");
  m.def("soundness_4nat", [](const FunctionTable& f, const FunctionTable& g) { return report_dict(soundness_bound_4nat(f, g)); });
  m.def("soundness_3col", [](const FunctionTable& f, const FunctionTable& g) { return report_dict(soundness_bound_3col(f, g)); });
  m.def("folding_test_probability",
        [](const FunctionTable& f) { return fraction(folding_test_probability(f).probability); });

  m.def("gadget_gammas", [] {
    py::dict out;
    for (const auto& spec : {fournat_to_2nlin_gadget(), twonlin_to_labelcover_gadget(), fournat_to_labelcover_gadget()}) {
      const auto v = verify_gamma(spec);
      out[py::str(spec.name)] = py::make_tuple(fraction(v.gamma_observed), v.pass);
    }
    return out;
  }, "Verified gamma of every built-in gadget, keyed by name.");
  m.def("compose_thresholds", [](const py::object& c, const py::object& s, const py::object& gamma) {
    const auto t = compose_thresholds(DecisionThresholds(from_python(c), from_python(s)), from_python(gamma));
    return py::make_tuple(fraction(t.c), fraction(t.s));
  });

  m.def("decode_spectrum", [](const FunctionTable& g) { return decode_spectrum(transform(g)); });
  m.def("expected_decoded_value", [](const py::object& labelcover, const py::object& tables) {
    return expected_decoded_value(labelcover_from_json(python_to_json(labelcover)), tables_from_json(python_to_json(tables)));
  });
  m.def("build_4nat_instance", [](const py::object& labelcover) {
    return json_to_python(csp_to_json(build_4nat_instance(labelcover_from_json(python_to_json(labelcover))).csp));
  });

  m.def("run_suite", [](const std::string& suite, int K, int d, int trials, std::uint64_t seed, double tolerance) {
    SuiteOptions o;
    o.suite = suite;
    o.K = K;
    o.d = d;
    o.trials = trials;
    o.seed = seed;
    o.tolerance = tolerance;
    return json_to_python(run_suite(o).to_json());
  }, py::arg("suite") = "all", py::arg("K") = 2, py::arg("d") = 2, py::arg("trials") = 20, py::arg("seed") = 1,
        py::arg("tolerance") = 1e-9);
  m.def("reduce", [](const py::object& instance, const std::vector<std::string>& chain) {
    const auto r = run_reduction(python_to_json(instance), chain, std::nullopt);
    return py::make_tuple(json_to_python(r.instance), json_to_python(r.report));
  });
}
