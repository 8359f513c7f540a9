#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sepfol/analysis.hpp"
#include "sepfol/bounds.hpp"
#include "sepfol/decide.hpp"
#include "sepfol/errors.hpp"
#include "sepfol/reductions.hpp"
#include "sepfol/report.hpp"
#include "sepfol/tptp.hpp"
#include "sepfol/transform.hpp"

namespace py = pybind11;
using namespace sepfol;

namespace {

Caps make_caps(std::uint64_t node_cap, std::uint64_t structure_cap, std::uint64_t size_cap) {
  Caps caps;
  caps.node_cap = node_cap;
  caps.structure_cap = structure_cap;
  caps.size_cap = size_cap;
  return caps;
}

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Separated fragment toolkit: parsing, classification, transposition, bounds and decision.";

  py::class_<Formula>(m, "Formula")
      .def(py::init(&parse_formula), py::arg("text"))
      .def("__str__", [](const Formula& f) { return print_tptp(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + print_tptp(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", [](const Formula& f) { return std::hash<std::string>{}(print_tptp(f)); })
      .def_property_readonly("free_vars", [](const Formula& f) { return free_vars(f); })
      .def_property_readonly("node_count", [](const Formula& f) { return node_count(f); })
      .def("count_quantifiers", [](const Formula& f, const std::string& which) {
        if (which == "exists") return count_quantifiers(f, Quantifier::Exists);
        if (which == "forall") return count_quantifiers(f, Quantifier::Forall);
        throw py::value_error("expected 'exists' or 'forall'");
      });

  auto base = py::register_exception<Error>(m, "SepfolError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<NotSF>(m, "NotSF", base.ptr());
  py::register_exception<SeparationError>(m, "SeparationError", base.ptr());

  m.def("parse", &parse_formula, py::arg("text"), "Reads a bare TPTP formula.");
  m.def(
      "parse_problem",
      [](const std::string& text) {
        std::vector<Formula> out;
        for (const auto& f : parse_tptp(text).formulas) out.push_back(f.formula);
        return out;
      },
      py::arg("text"), "Formulas of a TPTP problem in file order.");

  m.def("classify", [](const Formula& f) { return classify(f).names(); }, py::arg("phi"));
  m.def("to_nnf", &to_nnf, py::arg("phi"));
  m.def("miniscope", &miniscope, py::arg("phi"));
  m.def(
      "to_prenex",
      [](const Formula& f, bool forall_first) {
        return to_prenex(f, forall_first ? PullOrder::ForallFirst : PullOrder::ExistsFirst);
      },
      py::arg("phi"), py::arg("forall_first") = false);
  m.def(
      "transpose_block", [](const Formula& f, std::uint64_t node_cap) { return transpose_block(f, make_caps(node_cap, 10'000'000, 10)); },
      py::arg("phi"), py::arg("node_cap") = Caps{}.node_cap);
  m.def(
      "transpose_all", [](const Formula& f, std::uint64_t node_cap) { return transpose_all(f, make_caps(node_cap, 10'000'000, 10)); },
      py::arg("phi"), py::arg("node_cap") = Caps{}.node_cap);
  m.def("gen_blowup", [](int n) { return gen_blowup(n); }, py::arg("n"));

  m.def("bounds_json", [](const Formula& f) { return dump(to_json(compute_bounds(f))); }, py::arg("phi"));
  m.def("range_restrict", [](const Formula& f) { return range_restrict(f); }, py::arg("phi"));
  m.def("skolemize_range_restricted", [](const Formula& f) { return skolemize_range_restricted(f); }, py::arg("phi"));
  m.def("inner_skolemize", [](const Formula& f) { return inner_skolemize(f); }, py::arg("phi"));

  m.def("eliminate_unary_functions", &eliminate_unary_functions, py::arg("phi"));
  m.def("eliminate_equality_monadic", &eliminate_equality_monadic, py::arg("phi"));
  m.def("eliminate_equality_bounded", &eliminate_equality_bounded, py::arg("phi"), py::arg("k"));
  m.def(
      "to_bsr_clauses",
      [](const Formula& f, const std::string& encoding) {
        if (encoding != "relational" && encoding != "skolem") throw py::value_error("encoding must be relational or skolem");
        return to_bsr_clauses(f, encoding == "relational" ? BsrEncoding::Relational : BsrEncoding::SkolemFn).print();
      },
      py::arg("phi"), py::arg("encoding") = "relational");

  m.def(
      "eval", [](const std::string& model, const Formula& f) { return eval(parse_structure(model), {}, f); },
      py::arg("model_json"), py::arg("phi"));
  m.def(
      "decide_json",
      [](const Formula& f, std::uint64_t size_cap, std::uint64_t structure_cap) {
        Verdict v;
        {
          py::gil_scoped_release release;
          v = decide_sf(f, make_caps(Caps{}.node_cap, structure_cap, size_cap));
        }
        return dump(to_json(v));
      },
      py::arg("phi"), py::arg("size_cap") = Caps{}.size_cap, py::arg("structure_cap") = Caps{}.structure_cap);
  m.def(
      "oracle_json",
      [](const Formula& f, int max_size) {
        Verdict v;
        {
          py::gil_scoped_release release;
          v = oracle_decide(f, max_size);
        }
        return dump(to_json(v));
      },
      py::arg("phi"), py::arg("max_size"));
  m.def(
      "oracle_equivalent",
      [](const Formula& a, const Formula& b, int max_size) {
        py::gil_scoped_release release;
        return oracle_equivalent(a, b, max_size);
      },
      py::arg("phi"), py::arg("psi"), py::arg("max_size"));
}
