#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kflag/errors.hpp"
#include "kflag/expr.hpp"
#include "kflag/flag_engine.hpp"
#include "kflag/groebner.hpp"
#include "kflag/tower_io.hpp"
#include "kflag/weyl.hpp"

namespace py = pybind11;
using namespace kflag;

namespace {

PresentationMode mode_of(bool equivariant) {
  return equivariant ? PresentationMode::Equivariant : PresentationMode::Ordinary;
}

std::string presentation_json(const Tower& t, bool equivariant) {
  return to_json(equivariant ? equivariant_presentation(t) : ordinary_presentation(t)).dump();
}

std::string normal_form_json(const Tower& t, const std::string& expr, bool equivariant) {
  const LaurentPoly p = parse_poly(expr, VariableTable::from_tower(t, mode_of(equivariant)));
  return to_json(QuotientEngine::build(t, mode_of(equivariant)).normal_form(p)).dump();
}

std::string weyl_json(const std::string& family, int vars, std::vector<int> blocks) {
  const Stage s(parse_family(family), vars, std::move(blocks));
  nlohmann::json out = {{"weyl_order", weyl_order(s)}, {"coset_rank", coset_rank(s)}};
  out["invariant_generators"] = nlohmann::json::array();
  for (const auto& g : invariant_generators(s)) out["invariant_generators"].push_back(to_string(g));
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_kflag, m) {
  m.doc() = "K-rings of flag Bott towers";

  static py::handle error = py::exception<Error>(m, "KflagError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error(e.what());
      exc.attr("kind") = e.kind();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Tower>(m, "Tower")
      .def_property_readonly("height", &Tower::height)
      .def_property_readonly("fingerprint", [](const Tower& t) { return fingerprint(t); })
      .def_property_readonly("expected_rank", [](const Tower& t) { return expected_rank(t); })
      .def_property_readonly("is_type_a_full_flag", &Tower::all_type_a_borel)
      .def("to_json", [](const Tower& t) { return to_json(t.spec()).dump(); });

  m.def("parse_tower", [](const std::string& text) { return Tower::validate(parse_tower_spec(text)); },
        py::arg("json_text"));
  m.def("load_tower", [](const std::string& path) { return load_tower(path); }, py::arg("path"));
  m.def("presentation_json", &presentation_json, py::arg("tower"), py::arg("equivariant") = false);
  m.def("verify_rank_json", [](const Tower& t) { return to_json(verify_rank(t)).dump(); }, py::arg("tower"));
  m.def("normal_form_json", &normal_form_json, py::arg("tower"), py::arg("expr"), py::arg("equivariant") = false);
  m.def("weyl_json", &weyl_json, py::arg("family"), py::arg("vars"), py::arg("blocks") = std::vector<int>{});
  m.def("canonical_expr", [](const std::string& src) { return render_expr(parse_expr(src)); }, py::arg("src"));
}
